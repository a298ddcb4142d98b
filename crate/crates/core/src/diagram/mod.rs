mod classify;
pub use classify::*;
mod enumerate;
pub use enumerate::*;
mod bounds;
mod lemmas;
pub use bounds::*;
pub use lemmas::*;
