//! The evaluated object classes and their extent priors.

use serde::{Deserialize, Serialize};

/// One object class with its extent prior: actors sample their
/// (length, width, height) uniformly within `mean +/- jitter`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassSpec {
    pub name: String,
    pub extent_mean: [f32; 3],
    pub extent_jitter: [f32; 3],
    /// Relative sampling weight; must be positive.
    pub weight: f32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassTable {
    pub classes: Vec<ClassSpec>,
}

impl ClassTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn name_of(&self, class_id: usize) -> &str {
        &self.classes[class_id].name
    }

    pub fn names(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.name.clone()).collect()
    }

    pub fn total_weight(&self) -> f32 {
        self.classes.iter().map(|c| c.weight).sum()
    }
}

impl Default for ClassTable {
    /// Car, truck, bus, pedestrian.
    fn default() -> Self {
        let spec = |name: &str, mean: [f32; 3], jitter: [f32; 3], weight: f32| ClassSpec {
            name: name.to_string(),
            extent_mean: mean,
            extent_jitter: jitter,
            weight,
        };
        ClassTable {
            classes: vec![
                spec("car", [4.5, 1.9, 1.6], [0.5, 0.15, 0.1], 0.5),
                spec("truck", [8.0, 2.5, 3.0], [1.5, 0.2, 0.3], 0.15),
                spec("bus", [11.0, 2.9, 3.3], [1.0, 0.1, 0.2], 0.1),
                spec("pedestrian", [0.7, 0.7, 1.75], [0.1, 0.1, 0.15], 0.25),
            ],
        }
    }
}
