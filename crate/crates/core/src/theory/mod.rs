//! Exact, deterministic counterparts of the simulations: limit laws,
//! master-equation iteration and brute-force enumeration of tiny runs.

pub mod enumerate;
pub mod pmf;
pub mod product;
pub mod recurrence;
pub mod special;

pub use enumerate::{enumerate_exact, EnumSpec, ExactLaw};
pub use pmf::{
    ba_limit_pmf, iipa_limit_pmf, price_limit_pmf, simon_limit_pmf, yule_limit_pmf, LimitLaw,
    TheoryPmf,
};
pub use product::{product_asymptotic_check, ProductCheck};
pub use recurrence::{
    ba_single_expected, iipa_expected, price_expected, simon_expected, ExpectationTable, Schedule,
};
