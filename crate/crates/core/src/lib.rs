//! Uncertain string matching: profile matching, weighted pattern matching,
//! weighted consensus and the multichoice knapsack problem.
//!
//! Public positions are 1-based throughout.

pub mod alphabet;
pub mod capacity;
pub mod consensus;
pub mod error;
pub mod knapsack;
pub mod lcp;
pub mod neglog;
pub mod profile;
pub mod reference;
pub mod scalar;
pub mod sdwc;
pub mod weighted;

pub use alphabet::{Alphabet, Letter};
pub use consensus::{
    gwpm, gwpm_witness, knapsack_to_wc, wc_to_knapsack, weighted_consensus, Algo, GwpmResult, WcInstance,
};
pub use error::{Error, Result};
pub use knapsack::{Choice, ItemClass, KnapsackInstance};
pub use lcp::{build_cross_index, build_index, CrossIndex, LcpIndex, Text};
pub use neglog::{NegLog, ProbThreshold};
pub use profile::{profile_match, ScoreThreshold, ScoringMatrix};
pub use scalar::Scalar;
pub use sdwc::{SdwcInstance, SolidFactorRep};
pub use weighted::{match_neglog, maximal_solid_prefixes, wpm, WeightedSequence};

/// Profile with 64-bit scores.
pub type Profile = ScoringMatrix<i64>;

/// Knapsack instance with 64-bit values and weights.
pub type Knapsack = KnapsackInstance<i64>;
