//! Free-group words, finite quotients and Stallings core graphs.

mod fold;
mod quotient;
mod word;

pub use fold::{fold_core_graph, CoreGraph, FoldReport, Index};
pub use quotient::{coset_action, FiniteQuotientHom, Perm, PermRep, QuotientElem};
pub use word::{abelianize, reduce_word, Alphabet, Word};
