//! Minimal dense tensor with row-major layout.
//!
//! The pipeline only ever needs 1-D vectors, C×H×W feature maps and
//! C_out×C_in×3×3 convolution kernels, so this stays deliberately small:
//! a shape vector plus a flat data buffer.

use crate::scalar::Real;

/// Dense row-major tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<T> {
    shape: Vec<usize>,
    data: Vec<T>,
}

impl<T: Real> Tensor<T> {
    pub fn zeros(shape: &[usize]) -> Self {
        let len = shape.iter().product();
        Tensor {
            shape: shape.to_vec(),
            data: vec![T::zero(); len],
        }
    }

    pub fn filled(shape: &[usize], value: T) -> Self {
        let len = shape.iter().product();
        Tensor {
            shape: shape.to_vec(),
            data: vec![value; len],
        }
    }

    /// Wraps an existing buffer. Panics if `data` does not match `shape`;
    /// callers construct shapes and buffers together so a mismatch is a bug.
    pub fn from_vec(shape: &[usize], data: Vec<T>) -> Self {
        assert_eq!(
            shape.iter().product::<usize>(),
            data.len(),
            "tensor shape {:?} does not match buffer length {}",
            shape,
            data.len()
        );
        Tensor {
            shape: shape.to_vec(),
            data,
        }
    }

    #[inline]
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn data(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    /// Element accessor for a C×H×W tensor.
    #[inline]
    pub fn at3(&self, c: usize, y: usize, x: usize) -> T {
        debug_assert_eq!(self.shape.len(), 3);
        let (h, w) = (self.shape[1], self.shape[2]);
        self.data[(c * h + y) * w + x]
    }

    #[inline]
    pub fn set3(&mut self, c: usize, y: usize, x: usize, v: T) {
        debug_assert_eq!(self.shape.len(), 3);
        let (h, w) = (self.shape[1], self.shape[2]);
        self.data[(c * h + y) * w + x] = v;
    }

    /// Element accessor for a Co×Ci×Kh×Kw tensor.
    #[inline]
    pub fn at4(&self, o: usize, i: usize, ky: usize, kx: usize) -> T {
        debug_assert_eq!(self.shape.len(), 4);
        let (ci, kh, kw) = (self.shape[1], self.shape[2], self.shape[3]);
        self.data[((o * ci + i) * kh + ky) * kw + kx]
    }

    /// Contiguous H×W plane of channel `c` in a C×H×W tensor.
    #[inline]
    pub fn plane(&self, c: usize) -> &[T] {
        debug_assert_eq!(self.shape.len(), 3);
        let plane = self.shape[1] * self.shape[2];
        &self.data[c * plane..(c + 1) * plane]
    }

    #[inline]
    pub fn plane_mut(&mut self, c: usize) -> &mut [T] {
        debug_assert_eq!(self.shape.len(), 3);
        let plane = self.shape[1] * self.shape[2];
        &mut self.data[c * plane..(c + 1) * plane]
    }

    pub fn map<U: Real>(&self, f: impl Fn(T) -> U) -> Tensor<U> {
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Widens/narrows the scalar type (used to lift stored f32 features to f64).
    pub fn cast<U: Real>(&self) -> Tensor<U> {
        self.map(|v| U::from(v).expect("scalar cast"))
    }

    pub fn max_abs_diff(&self, other: &Tensor<T>) -> T {
        assert_eq!(self.shape, other.shape);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max)
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_is_row_major() {
        let mut t = Tensor::<f64>::zeros(&[2, 3, 4]);
        t.set3(1, 2, 3, 7.0);
        assert_eq!(t.data()[1 * 12 + 2 * 4 + 3], 7.0);
        assert_eq!(t.at3(1, 2, 3), 7.0);
    }

    #[test]
    fn plane_is_contiguous() {
        let data: Vec<f64> = (0..24).map(|i| i as f64).collect();
        let t = Tensor::from_vec(&[2, 3, 4], data);
        assert_eq!(t.plane(1)[0], 12.0);
        assert_eq!(t.plane(1).len(), 12);
    }

    #[test]
    #[should_panic(expected = "does not match buffer length")]
    fn from_vec_rejects_mismatch() {
        let _ = Tensor::from_vec(&[2, 2], vec![0.0f64; 3]);
    }
}
