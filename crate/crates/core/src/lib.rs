pub mod diagram;
pub mod engine;
pub mod metrics;
pub mod rules;
pub mod semantics;
pub mod tactics;
pub mod textio;
#[cfg(feature = "service")]
pub mod service;
