//! Statistical phase analysis of word sequences.
//!
//! A text is mapped to a sequence of word vectors, centered, and its lag
//! autocorrelation function is computed from pairwise cosine similarities.
//! The shape of that curve is then summarized two ways: a spectral
//! periodicity metric (dominant DFT magnitude of the curve) and a decay-law
//! comparison (power law vs exponential, scored by MAPE ratio). Together
//! they classify a text as periodic, critical, amorphous, or indeterminate.
//!
//! This crate is `no_std` (alloc required) and holds only the pure
//! computation: parsing embedding lines, tokenizing, correlation kernels,
//! spectra, fits, and the classifier. File IO, corpus layout, report
//! formats, and the generation client live in the companion `textphase`
//! crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod acf;
pub mod embeddings;
pub mod fft;
pub mod lawfit;
pub mod phase;
pub mod sampling;
pub mod spectrum;
pub mod tokenize;

pub use acf::{acf_direct, acf_fft, cosine, AcfCurve, AcfError, AcfPoint, LagGrid, LagPreset};
pub use embeddings::{
    embed_and_center, EmbedError, EmbeddingError, EmbeddingTable, EmbeddingTableBuilder,
    VectorSequence,
};
pub use lawfit::{
    fit_exponential, fit_power, gapelmaper, DecayLaw, FitError, FitResult, GapelmaperResult,
    GapelmaperStatus, LagRange,
};
pub use phase::{classify, classify_detailed, AnalysisConfig, ClassifyDetail, Phase, PhaseError, PhaseLabel};
pub use sampling::{temperature_softmax, SoftmaxError};
pub use spectrum::{acf_spectrum, transition_curve, SpectrumError, SpectrumResult, TransitionRow};
pub use tokenize::{tokenize, GenerationMeta, TokenSequence};
