//! Exact rational polynomial engine.

pub mod families;
pub mod operator;
pub mod poly;
pub mod powerform;
pub mod series;

pub use families::{eigencheck, endpoint_values, generate, genfun, hypergeometric, recurrence, rodrigues, Family, Method};
pub use operator::OperatorSpec;
pub use poly::Poly;
pub use powerform::{Base, PowerForm};
pub use series::Series;
