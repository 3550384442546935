//! Network selection and vertical handover decisions for heterogeneous
//! wireless networks.
//!
//! * [`madm`]: SAW and WPM scoring over decision matrices, ranking and RSD.
//! * [`selection`]: network quality values from offered and required QoS.
//! * [`trust`]: level-of-trust gate and updates.
//! * [`schemes`]: centralized, distributed and trusted distributed decisions
//!   with their processing-delay accounting.
//! * [`sim`]: a deterministic mobility simulator driving the schemes.

pub mod madm;
pub mod schemes;
pub mod selection;
pub mod sim;
pub mod trust;
