//! UT2 as an algebra with a UT2-bimodule structure.

mod action;
mod element;
mod json;
mod operator;

pub use action::{check_axioms, ActionError, ActionTag, Axiom, AxiomReport, Violation, WAlgebraAction};
pub use element::{Slot, UTElement, Unit};
pub use json::{action_from_json, action_from_str, action_to_json, ActionJsonError};
pub use operator::{is_trivial_linear, lr_span_dim, operator_of, operator_sum, slot_operator, LinearOperator};
