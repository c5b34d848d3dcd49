//! Exact differential-difference polynomial recurrences and the
//! probabilistic diagnostics built on top of them: factorial-moment
//! propagation, certified real-rooted decompositions, limit-law checks,
//! and the tableau enumerations the polynomials count.

pub mod limits;
pub mod moments;
mod par;
pub mod poly;
pub mod recurrence;
pub mod roots;
pub mod tableaux;

pub use limits::{
    clt_report, diagnose_poisson, diagnose_poisson_family, local_limit_report,
    scaled_moment_limit, CltReport, LimitError, LocalLimitReport, PoissonDiagnosis,
    ScaledMomentReport, ScaledMomentRow, GAUSSIAN_M3, GAUSSIAN_M4,
};
pub use moments::{
    abn_variance_recurrence, derivative_vector_table, derivative_vector_table_f64, moment_report,
    pmf, FloatMoments, MomentError, MomentReport, Pmf,
};
pub use poly::{parse_rational, rat, rat_i, rational_to_f64, Polynomial, Rational};
pub use recurrence::{
    builtin, verify_symmetric_reduction, Family, Normalization, RecurrenceError, RecurrenceForm,
    RecurrenceSpec, SymbolicCoefficient,
};
pub use roots::{
    bernoulli_decomposition, certify, certify_all, certify_all_sequential, count_real_roots,
    isolate, isolate_all, lyapunov_ratio, BernoulliDecomposition, ProbabilityBracket,
    RootCertificate, RootError, RootInterval, SturmChain,
};
pub use tableaux::{
    enumerate_shapes, enumerate_symmetric, enumerate_symmetric_sequential, enumerate_tableaux,
    enumerate_tableaux_sequential, statistic_distribution, Caps, FerrersShape, Histogram,
    Statistic, Tableau, TableauStats, TableauxError,
};
