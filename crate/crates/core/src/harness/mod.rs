//! Sharpness generators, seeded random ensembles, Monte Carlo campaigns and property
//! suites. Double precision only.

mod campaign;
mod ensembles;
mod rng;
mod sharpness;
mod verify;

pub use campaign::{
    evaluate_rectangular, evaluate_symmetric, run_campaign, Campaign, CampaignSummary, RatioStats,
    TrialOutcome, TrialRecord,
};
pub use ensembles::{gen_rectangular, gen_spiked_symmetric, EnsembleKind, EnsembleSpec, Spectrum};
pub use rng::{
    gaussian_matrix, haar_orthogonal, random_frame, splitmix64, symmetric_noise, trial_rng,
    trial_seed, TrialRng,
};
pub use sharpness::{
    diag_sharpness, gen_sharpness_diag, gen_sharpness_rotation, rotation_sharpness,
    SharpnessExample, SharpnessRow,
};
pub use verify::{run_verify, Failure, Fault, PropertyResult, Suite, VerifyReport};
