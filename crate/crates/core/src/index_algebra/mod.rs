//! Exact symbolic calculus on indices: the Q-vector space they span, the
//! stuffle product, the index shuffle, `sigma_n`, and the signed
//! convolutions `m_i_n`.

mod combination;
mod index;
mod product;

pub use combination::IndexCombination;
pub use index::{Index, IndexError};
pub use product::{
    clear_memo_tables, index_shuffle, index_shuffle_indices, m_i_n, sigma, sigma_index, stuffle,
    stuffle_indices,
};
