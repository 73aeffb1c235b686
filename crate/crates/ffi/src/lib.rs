//! C ABI over `peaklab`.
//!
//! Instances and GA runs are opaque heap handles owned by the caller and
//! released with their `*_free` function. Every fallible call returns a
//! [`PlStatus`]; on failure [`pl_last_error`] describes the problem. Bit
//! strings cross the boundary as arrays of `uint8_t` holding 0 or 1.
//! Strings returned through `char **` are NUL-terminated and must be freed
//! with [`pl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};

use peaklab::telemetry;
use peaklab::{
    BitString, ClimbConfig, CrossoverKind, CrossoverScheme, Error, GaConfig, GaRun, HeightScheme,
    Outcome, ProblemInstance, SelectionScheme, SuccessRule,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    LengthMismatch = 3,
    ParseError = 4,
    IoError = 5,
    GenerationFailed = 6,
    NotAvailable = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlScheme {
    Equal = 0,
    Linear = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlSelection {
    BinaryTournament = 0,
    FitnessProportional = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlCrossover {
    OnePoint = 0,
    TwoPoint = 1,
    Uniform = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlOutcome {
    OptimumFound = 0,
    BudgetExhausted = 1,
    WrongBasinConverged = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlSuccessRule {
    GlobalPeak = 0,
    AnyTopPeak = 1,
}

/// Opaque problem instance.
pub struct PlInstance(ProblemInstance);

/// Opaque finished GA run.
pub struct PlGaRun(GaRun);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PlEvalResult {
    pub fitness: f64,
    pub nearest_peak: usize,
    pub distance: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlGaConfig {
    pub population_size: usize,
    pub selection: PlSelection,
    /// Used only with fitness-proportional selection.
    pub scaling_factor: f64,
    pub crossover: PlCrossover,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub max_evaluations: u64,
    pub early_stop_on_wrong_basin: bool,
    pub convergence_fraction: f64,
    pub success_rule: PlSuccessRule,
    pub seed: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlClimbConfig {
    pub max_evaluations: u64,
    pub success_rule: PlSuccessRule,
    pub seed: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PlClimbOutcome {
    pub success: bool,
    pub evaluations_used: u64,
    pub restarts: u64,
    pub best_fitness: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> PlStatus {
    match err {
        Error::LengthMismatch { .. } => PlStatus::LengthMismatch,
        Error::InvalidParameter(_) => PlStatus::InvalidArgument,
        Error::PeakPlacement { .. } => PlStatus::GenerationFailed,
        Error::Parse { .. } => PlStatus::ParseError,
        Error::Io(_) => PlStatus::IoError,
    }
}

fn fail(status: PlStatus, msg: &str) -> PlStatus {
    set_error(msg);
    status
}

fn guard<F>(f: F) -> PlStatus
where
    F: FnOnce() -> Result<(), (PlStatus, String)> + UnwindSafe,
{
    match catch_unwind(f) {
        Ok(Ok(())) => {
            set_error("");
            PlStatus::Ok
        }
        Ok(Err((status, msg))) => fail(status, &msg),
        Err(_) => fail(PlStatus::Panic, "internal panic"),
    }
}

fn lift(err: Error) -> (PlStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (PlStatus, String) {
    (PlStatus::NullPointer, format!("{what} is null"))
}

unsafe fn bits_from<'a>(bits: *const u8, len: usize) -> Result<&'a [u8], (PlStatus, String)> {
    if bits.is_null() {
        return Err(null("bits"));
    }
    Ok(std::slice::from_raw_parts(bits, len))
}

unsafe fn instance_ref<'a>(inst: *const PlInstance) -> Result<&'a ProblemInstance, (PlStatus, String)> {
    inst.as_ref().map(|i| &i.0).ok_or_else(|| null("instance"))
}

fn string_out(out: *mut *mut c_char, s: String) -> Result<(), (PlStatus, String)> {
    let c = CString::new(s).map_err(|_| (PlStatus::InvalidArgument, "interior NUL".to_string()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn success_rule(rule: PlSuccessRule) -> SuccessRule {
    match rule {
        PlSuccessRule::GlobalPeak => SuccessRule::GlobalPeak,
        PlSuccessRule::AnyTopPeak => SuccessRule::AnyTopPeak,
    }
}

/// Message for the most recent failed call on this thread; empty after a
/// successful call. Valid until the next call into this library.
#[no_mangle]
pub extern "C" fn pl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Generates an instance. `h_min` is ignored for the equal scheme.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn pl_instance_generate(
    peaks: usize,
    length: usize,
    scheme: PlScheme,
    h_min: f64,
    seed: u64,
    out: *mut *mut PlInstance,
) -> PlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let scheme = match scheme {
            PlScheme::Equal => HeightScheme::Equal,
            PlScheme::Linear => HeightScheme::Linear { h_min },
        };
        let inst = peaklab::generate_instance(peaks, length, scheme, seed).map_err(lift)?;
        *out = Box::into_raw(Box::new(PlInstance(inst)));
        Ok(())
    })
}

/// Parses the line-oriented instance format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_instance_parse(text: *const c_char, out: *mut *mut PlInstance) -> PlStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (PlStatus::ParseError, "instance text is not UTF-8".to_string()))?;
        let inst = peaklab::parse_instance(text).map_err(lift)?;
        *out = Box::into_raw(Box::new(PlInstance(inst)));
        Ok(())
    })
}

/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_instance_serialize(inst: *const PlInstance, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        let inst = instance_ref(inst)?;
        if out.is_null() {
            return Err(null("out"));
        }
        string_out(out, peaklab::serialize_instance(inst))
    })
}

/// # Safety
/// `inst` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_instance_free(inst: *mut PlInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of peaks, or 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_instance_peak_count(inst: *const PlInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.peak_count())
}

/// String length in bits, or 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_instance_length(inst: *const PlInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.length())
}

/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_instance_seed(inst: *const PlInstance) -> u64 {
    inst.as_ref().map_or(0, |i| i.0.seed())
}

/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_instance_height(inst: *const PlInstance, index: usize, out: *mut f64) -> PlStatus {
    guard(|| {
        let inst = instance_ref(inst)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let h = inst.heights().get(index).ok_or_else(|| {
            (PlStatus::InvalidArgument, format!("peak index {index} out of range"))
        })?;
        *out = *h;
        Ok(())
    })
}

/// Copies peak `index` into `bits[0..len]`; `len` must equal the instance
/// length.
///
/// # Safety
/// `inst` must be a live handle; `bits` must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn pl_instance_peak(
    inst: *const PlInstance,
    index: usize,
    bits: *mut u8,
    len: usize,
) -> PlStatus {
    guard(|| {
        let inst = instance_ref(inst)?;
        if bits.is_null() {
            return Err(null("bits"));
        }
        let peak = inst.peaks().get(index).ok_or_else(|| {
            (PlStatus::InvalidArgument, format!("peak index {index} out of range"))
        })?;
        if len != peak.len() {
            return Err(lift(Error::LengthMismatch {
                left: peak.len(),
                right: len,
            }));
        }
        std::slice::from_raw_parts_mut(bits, len).copy_from_slice(&peak.to_bits());
        Ok(())
    })
}

/// # Safety
/// `a` and `b` must point to `len` readable bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_hamming(a: *const u8, b: *const u8, len: usize, out: *mut usize) -> PlStatus {
    guard(|| {
        let a = BitString::from_bits(bits_from(a, len)?).map_err(lift)?;
        let b = BitString::from_bits(bits_from(b, len)?).map_err(lift)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = a.hamming(&b).map_err(lift)?;
        Ok(())
    })
}

/// # Safety
/// `inst` must be a live handle, `bits` must point to `len` readable bytes
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_evaluate(
    inst: *const PlInstance,
    bits: *const u8,
    len: usize,
    out: *mut PlEvalResult,
) -> PlStatus {
    guard(|| {
        let inst = instance_ref(inst)?;
        let x = BitString::from_bits(bits_from(bits, len)?).map_err(lift)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let e = inst.evaluate(&x).map_err(lift)?;
        *out = PlEvalResult {
            fitness: e.fitness,
            nearest_peak: e.nearest_peak,
            distance: e.distance,
        };
        Ok(())
    })
}

impl From<&GaConfig> for PlGaConfig {
    fn from(c: &GaConfig) -> Self {
        let (selection, scaling_factor) = match c.selection {
            SelectionScheme::BinaryTournament => {
                (PlSelection::BinaryTournament, peaklab::evolver::DEFAULT_SCALING_FACTOR)
            }
            SelectionScheme::FitnessProportional { scaling_factor } => {
                (PlSelection::FitnessProportional, scaling_factor)
            }
        };
        PlGaConfig {
            population_size: c.population_size,
            selection,
            scaling_factor,
            crossover: match c.crossover.kind {
                CrossoverKind::OnePoint => PlCrossover::OnePoint,
                CrossoverKind::TwoPoint => PlCrossover::TwoPoint,
                CrossoverKind::Uniform => PlCrossover::Uniform,
            },
            crossover_rate: c.crossover.probability,
            mutation_rate: c.mutation_rate,
            max_evaluations: c.max_evaluations,
            early_stop_on_wrong_basin: c.early_stop_on_wrong_basin,
            convergence_fraction: c.convergence_fraction,
            success_rule: match c.success_rule {
                SuccessRule::GlobalPeak => PlSuccessRule::GlobalPeak,
                SuccessRule::AnyTopPeak => PlSuccessRule::AnyTopPeak,
            },
            seed: c.seed,
        }
    }
}

impl From<&PlGaConfig> for GaConfig {
    fn from(c: &PlGaConfig) -> Self {
        GaConfig {
            population_size: c.population_size,
            selection: match c.selection {
                PlSelection::BinaryTournament => SelectionScheme::BinaryTournament,
                PlSelection::FitnessProportional => SelectionScheme::FitnessProportional {
                    scaling_factor: c.scaling_factor,
                },
            },
            crossover: CrossoverScheme {
                kind: match c.crossover {
                    PlCrossover::OnePoint => CrossoverKind::OnePoint,
                    PlCrossover::TwoPoint => CrossoverKind::TwoPoint,
                    PlCrossover::Uniform => CrossoverKind::Uniform,
                },
                probability: c.crossover_rate,
            },
            mutation_rate: c.mutation_rate,
            max_evaluations: c.max_evaluations,
            early_stop_on_wrong_basin: c.early_stop_on_wrong_basin,
            convergence_fraction: c.convergence_fraction,
            success_rule: success_rule(c.success_rule),
            seed: c.seed,
        }
    }
}

/// Fills `out` with the standard GA setup (two-point crossover at 0.7,
/// binary tournament, Pm = 1/L, 30 000 evaluations, no early stop).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_ga_config_standard(
    length: usize,
    population_size: usize,
    seed: u64,
    out: *mut PlGaConfig,
) -> PlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if length == 0 {
            return Err((PlStatus::InvalidArgument, "length must be at least 1".into()));
        }
        *out = PlGaConfig::from(&GaConfig::standard(length, population_size, seed));
        Ok(())
    })
}

/// # Safety
/// `inst` and `config` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_ga_run(
    inst: *const PlInstance,
    config: *const PlGaConfig,
    out: *mut *mut PlGaRun,
) -> PlStatus {
    guard(|| {
        let inst = instance_ref(inst)?;
        let config = config.as_ref().ok_or_else(|| null("config"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let run = peaklab::run_ga(&GaConfig::from(config), inst).map_err(lift)?;
        *out = Box::into_raw(Box::new(PlGaRun(run)));
        Ok(())
    })
}

/// # Safety
/// `run` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_ga_run_free(run: *mut PlGaRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}

/// # Safety
/// `run` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_ga_run_outcome(run: *const PlGaRun, out: *mut PlOutcome) -> PlStatus {
    guard(|| {
        let run = run.as_ref().ok_or_else(|| null("run"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = match run.0.outcome {
            Outcome::OptimumFound => PlOutcome::OptimumFound,
            Outcome::BudgetExhausted => PlOutcome::BudgetExhausted,
            Outcome::WrongBasinConverged => PlOutcome::WrongBasinConverged,
        };
        Ok(())
    })
}

/// Generations recorded in the trace (including generation 0), or 0 for a
/// null handle.
///
/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_ga_run_generations(run: *const PlGaRun) -> usize {
    run.as_ref().map_or(0, |r| r.0.generations())
}

/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_ga_run_evaluations_used(run: *const PlGaRun) -> u64 {
    run.as_ref().map_or(0, |r| r.0.evaluations_used())
}

/// `PL_STATUS_NOT_AVAILABLE` unless the run found the optimum.
///
/// # Safety
/// `run` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_ga_run_evaluations_to_success(run: *const PlGaRun, out: *mut u64) -> PlStatus {
    guard(|| {
        let run = run.as_ref().ok_or_else(|| null("run"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = run
            .0
            .evaluations_to_success
            .ok_or((PlStatus::NotAvailable, "run did not find the optimum".to_string()))?;
        Ok(())
    })
}

/// `PL_STATUS_NOT_AVAILABLE` unless the last generation sits in one basin.
///
/// # Safety
/// `run` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_ga_run_converged_peak(run: *const PlGaRun, out: *mut usize) -> PlStatus {
    guard(|| {
        let run = run.as_ref().ok_or_else(|| null("run"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = run
            .0
            .converged_peak
            .ok_or((PlStatus::NotAvailable, "population did not converge".to_string()))?;
        Ok(())
    })
}

/// Basin-count trace in the CSV schema written by the CLI.
///
/// # Safety
/// `run` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_ga_run_trace_csv(run: *const PlGaRun, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        let run = run.as_ref().ok_or_else(|| null("run"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        string_out(out, telemetry::trace_csv(&run.0))
    })
}

/// # Safety
/// `inst` and `config` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_climb(
    inst: *const PlInstance,
    config: *const PlClimbConfig,
    out: *mut PlClimbOutcome,
) -> PlStatus {
    guard(|| {
        let inst = instance_ref(inst)?;
        let c = config.as_ref().ok_or_else(|| null("config"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cfg = ClimbConfig {
            max_evaluations: c.max_evaluations,
            success_rule: success_rule(c.success_rule),
            seed: c.seed,
        };
        let o = peaklab::multi_restart_climb(inst, &cfg).map_err(lift)?;
        *out = PlClimbOutcome {
            success: o.success,
            evaluations_used: o.evaluations_used,
            restarts: o.restarts,
            best_fitness: o.best_fitness,
        };
        Ok(())
    })
}
