//! Exact rational vectors and matrices, rank, arithmetic distance and the
//! elementary operations of the symmetric-matrix geometry.

mod elim;
mod mat;
mod ops;
mod sym;
mod vector;

pub use elim::inverse;
pub use mat::Mat;
pub use ops::{
    congruence, congruence_rect, det, direct_sum_check, dist, embed_h, extract_block,
    image_basis, is_adjacent, rank, solve, sym_outer,
};
pub use sym::{RankOneTerm, SymMat};
pub use vector::Vector;
