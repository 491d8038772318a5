//! Exact arithmetic substrate: rationals, rational linear algebra,
//! binary-form polynomial algebra, and Sturm-sequence root isolation.

pub mod mat;
pub mod poly;
pub mod rat;
pub mod roots;

pub use mat::{signature_of, Mat, Signature, SymMat};
pub use poly::{binary_det, is_squarefree, squarefree_part, BinaryForm, UniPoly};
pub use rat::{parse_rat, rat, rat_to_string, ratio, Rat};
pub use roots::{isolate_real_roots, refine_interval, RootIsolation, SturmChain};
