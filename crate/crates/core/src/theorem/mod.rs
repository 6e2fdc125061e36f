//! The non-Hilbertianity construction: `γ`, the two lemmas, local splitting,
//! membership and the end-to-end witness.

pub mod gamma;
pub mod lemma1;
pub mod lemma2;
pub mod membership;
pub mod splitting;
pub mod witness;

pub use gamma::{
    gamma_eval, gamma_ratfunc, gamma_symmetry_check, specialize_f, DegenerateFlag, GammaValue,
};
pub use lemma1::{lemma1_batch, lemma1_certify, Lemma1Batch, Lemma1Case, Lemma1Certificate};
pub use lemma2::{lemma2_certify, Lemma2Certificate, Lemma2Evidence, Lemma2Verdict};
pub use membership::{is_totally_s_adic, Membership, MembershipReport};
pub use splitting::{
    splits_at_place, verify_splitting, LocalVerdict, PlaceSplitting, SplitEvidence, SplitMethod,
};
pub use witness::{theorem_witness, SampleSpec, WitnessConfig, WitnessReport, WitnessVerdict};
