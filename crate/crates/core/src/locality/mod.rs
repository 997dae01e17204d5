//! Discrete derivatives, mutual locality of formal distributions, k-th
//! products, and Virasoro tensor modules.

mod catalog;
mod examples;
mod indexed;
pub mod lemmas;
mod oracle;
mod order;
mod tensor;

pub use catalog::{nth_products_agreement, CatalogOracle, NthAgreement};
pub use examples::{example_oracle, heisenberg_analysis, witt_oracle, HeisenbergAnalysis, EXAMPLE_NAMES};
pub use indexed::{Delta, IndexedFunction};
pub use oracle::{
    add_into, format_combination, single, BasisBracket, BracketOracle, Combination, ComponentFn, Distribution, Key,
    TableOracle,
};
pub use order::{extract_kth_products, locality_order, t_covariance, KthProductTable, LocalityReport, Verdict};
pub use tensor::{tensor_samples, TensorModule};
