//! Exact coefficient arithmetic and the polynomial/series substrate.

pub mod bipoly;
pub mod factor;
pub mod field;
pub mod gcd;
pub mod resultant;
pub mod series;
pub mod unipoly;

pub use bipoly::BiPoly;
pub use field::{CoefField, ExtField, FieldElem, Rat};
pub use series::TruncSeries;
pub use unipoly::{UniPoly, UniSeries};
