//! String modules over type Ã quivers, their Hom and Ext spaces, and the
//! annulus model used to study exceptional collections.

pub mod annulus;
pub mod enumerate;
pub mod hequiver;
pub mod hom;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod quiver;
pub mod qwr;
pub mod render;
pub mod strings;
pub mod superquiver;
pub mod twist;

pub use quiver::{Orientation, Sign};
pub use strings::{Component, StringModule};
