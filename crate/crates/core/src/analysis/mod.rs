//! Encoding study and the labelling / input-normalization experiments.

mod dataset;
mod encoding;
mod experiments;
mod pca;

pub use dataset::{circular_dataset, CircularDataset, DEFAULT_RADIUS};
pub use encoding::{encoding_probability_vectors, encoding_study, separability_score, EncodingReport, EncodingStudy};
pub use experiments::{
    labelling_experiment, normalization_experiment, LabellingCase, LabellingCaseReport, LabellingReport,
    NormalizationReport,
};
pub use pca::{pca_2d, symmetric_eigen, PcaProjection};
