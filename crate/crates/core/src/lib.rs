//! Even very stable Higgs fixed points for `GL_n`: weight combinatorics,
//! divisor-tuple classification, Weyl-group numerology and graded checks of
//! the equivariant cohomology identities attached to them.

pub mod cli;
pub mod cohomology;
pub mod error;
pub mod higgs;
pub mod weights;
pub mod weyl;

pub use error::{Error, Result};
pub use weights::{DominantWeight, RootIndex, RootOrder};
pub use higgs::{ClassificationReport, DivisorTuple, PointLabel, WeightMap};
pub use weyl::{GroupSpec, HomogeneousPair, IntPolynomial};
pub use cohomology::{DiagramCase, DiagramReport, GradedPresentation, HilbertSeries};
