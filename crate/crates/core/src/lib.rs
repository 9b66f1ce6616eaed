//! Color-avoiding card deals and the binomial identity they count.
//!
//! Deal `3n` cards (denominations `1..=n` in red, green and blue) by picking a
//! denomination set `S` and splitting its `3|S|` cards into three equal hands
//! so that no player gets her own color. Counting these deals by `|S|` gives
//! `sum_k C(n,k) sum_j C(k,j)^3`; counting by the number of distinct
//! denominations in red's hand gives `sum_k C(n,k)^2 C(2k,k)`.
//!
//! - [`model`]: cards, deals, validation and the text form.
//! - [`enumeration`]: exhaustive generation and histograms.
//! - [`closed_forms`]: the binomial sums in exact arithmetic.
//! - [`bijections`]: the parameter tuples behind both counts.
//! - [`laurent`]: Laurent polynomials and the constant-term route.

pub mod bijections;
pub mod closed_forms;
pub mod enumeration;
pub mod laurent;
pub mod model;

pub use bijections::{BijectionError, Prop1Params, Prop2Params};
pub use closed_forms::{
    binomial, central_binomial_sum, franel, lhs_sum, prop2_count, rhs_sum, stat1_count,
    stat2_count, vandermonde_inner, vandermonde_outer, Count, FormulaError, Sequence,
};
pub use enumeration::{
    count_deals, enumerate_deals, enumerate_deals_with_red_denoms, enumerate_full_color_deals,
    histogram, AssignmentCode, EnumerationError, Histogram, Limits, Statistic, EXHAUSTIVE_GUARD,
};
pub use laurent::{ct_sequence_term, IdentityPolys, LaurentPoly, PolyError, CT_GUARD};
pub use model::{Card, Color, Deal, DealStats, DeckSpec, DenomSet, Denomination, Violation};
