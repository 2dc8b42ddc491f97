//! Symbolic computation with free-group automorphisms, graphs of groups
//! with free vertex groups and cyclic edge groups, and Dehn twist
//! machinery: Britton normal forms, twistors, the mu map and McCool
//! membership tests.

pub mod alphabet;
pub mod aut;
pub mod error;
pub mod extend;
pub mod fold;
pub mod gog;
pub mod gogaut;
pub mod harness;
pub mod pi1;
pub mod scenario;
pub mod treeball;
pub mod word;

pub use alphabet::Alphabet;
pub use aut::{mccool_membership, FreeAut, FreeHom, FreeIso, McCoolReport, OuterAutClass};
pub use error::{Error, Result};
pub use extend::{extend_homomorphism, ExtendedHom, Target, TargetElem};
pub use treeball::TreeBall;
pub use fold::{subgroup_membership, Membership};
pub use gog::{pi1_equal, translation_length, EdgeSpec, GraphOfGroups, PathWord};
pub use gogaut::{is_root_of_dehn_twist, mu, twist_aut, twist_kernel_rank, DehnTwistData, GoGAut, MuReport};
pub use harness::{run_scenario, run_section4, verify_fixed_claims, CheckResult, Config, Report, Status, SECTION4_CHECKS};
pub use pi1::Pi1Basis;
pub use scenario::{Scenario, Section4, DEFAULT_G};
pub use word::{Letter, Word};
