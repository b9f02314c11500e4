//! Feature assembly, classifiers, cross-validation and F1 scoring.

pub mod cv;
pub mod features;
pub mod metrics;
pub mod models;

pub use cv::{cross_validate, cross_validate_matrix, stratified_folds, CvOptions, EvalReport};
pub use features::{assemble_features, FeatureConfig, FeatureMatrix, FEATURE_NAMES};
pub use metrics::{f1_scores, F1Scores};
pub use models::{fit, ModelKind, ModelSpec, TrainedModel};
