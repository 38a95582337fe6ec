//! General-position complexes C_•(W, V) over F_p, their SL_n-coinvariants
//! S̃(F_p^n), the maps D_n and T_n, the ∗ product and the decomposability
//! checks.

pub mod chain;
pub mod decomp;
pub mod model;
pub mod product;
pub mod suites;
pub mod symbols;

pub use chain::{boundary, homotopy, Chain, GPTuple};
pub use model::{orbit_normalize, stilde_direct, stilde_presented, StildeDirect, StildeModel};
pub use product::{chain_star, ksb, ksp, star, star_chain, star_gens};
pub use symbols::{d_map, relation_instance, t_map, SymbolElem};
pub use suites::{verify_gp, GpSuite};
