//! Planarity, drawings and planarization passes.

mod drawing;
mod embedding;
pub(crate) mod lr;
mod planarize;

pub use drawing::{circular_drawing, circular_drawing_with_trials, Drawing, DEFAULT_TRIALS};
pub use embedding::{check_planarity, ports_on_outer_face, NonPlanarWitness, PlanarEmbedding, Planarity};
pub use planarize::{expand_restricted, reduce_degree, replace_crossings, Variant, DEFAULT_THRESHOLD};
