//! Wreath products, twisted wreath products and the groups `S(T,R,J)`,
//! realised as monomial groups over a label group.

mod monomial;
mod serialize;
mod twisted;

pub use monomial::MonomialBackend;
pub use serialize::{deserialize, serialize, HEADER};
pub use twisted::{
    build_omega_even_odd, build_s, build_s_part, build_u, embedded_subgroup, iterated_cyclic_wreath,
    iterated_wreath, linking_generators, s_generators, twisted_wreath, wreath_cyclic,
    wreath_generators, wreath_z2, AdicDecomposition, SPart, TwistParams, Variant,
};
