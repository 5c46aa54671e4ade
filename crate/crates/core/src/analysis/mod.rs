//! Exact-rate classification, rate reports and receiver criticality.

mod classify;
mod criticality;
mod report;

pub use classify::{classify, count_nested_pairs, detect_perfectly_nested, ClassLabel, Classification};
pub use criticality::{
    check_monotonicity, corollary1_demo, criticality_check, Augmentation, CriticalityReport, DemoStep, Monotonicity,
    Verdict,
};
pub use report::{
    analyze, analyze_with, AnalyzeOptions, Certificates, LowerCertificate, OracleCertificate, RateReport,
    UpperCertificate, UpperSource,
};
