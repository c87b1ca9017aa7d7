//! Computing with automorphism-free (asymmetric) trees.
//!
//! The crate covers labeled trees and their centers ([`tree`]), AHU canonical
//! codes and automorphism counting ([`canon`]), special leaves
//! ([`special_leaf`]), isomorphism-free enumeration ([`enumerate`]) and the
//! leaf-deletion poset of asymmetric trees with its E7 reduction chains
//! ([`poset`]). The [`cli`] module backs the `asymtree` binary.

pub mod canon;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod poset;
pub mod special_leaf;
pub mod tree;

pub use canon::{
    are_isomorphic, aut_order, brute_force_automorphisms, canonical_code, find_isomorphism,
    is_asymmetric, rooted_code, AutCount, Automorphism, CanonicalCode, CodeKind,
};
pub use enumerate::{all_trees, asymmetric_trees, count_report, CountRow, EnumerationStream};
pub use error::{Result, TreeError};
pub use poset::{
    build_hasse, chain_from_e7, minimal_elements, reduce_to_e7, reduce_to_e7_with, safe_leaves,
    CoverEdge, Hasse, PosetLevel, ReductionTrace, TieBreak,
};
pub use special_leaf::{find_special_leaf, is_special_leaf, SpecialLeafCertificate};
pub use tree::{build_tree, CenterInfo, Component, IdMap, Leaf, Tree};
