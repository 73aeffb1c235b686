use std::ffi::{CStr, CString};
use std::ptr;

use peaklab_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(pl_last_error()) }.to_string_lossy().into_owned()
}

fn generate(peaks: usize, length: usize, seed: u64) -> *mut PlInstance {
    let mut inst = ptr::null_mut();
    let st = unsafe { pl_instance_generate(peaks, length, PlScheme::Linear, 0.5, seed, &mut inst) };
    assert_eq!(st, PlStatus::Ok, "{}", last_error());
    assert!(!inst.is_null());
    inst
}

#[test]
fn instance_accessors_match_the_library() {
    let inst = generate(5, 20, 3);
    let lib = peaklab::generate_instance(5, 20, peaklab::HeightScheme::Linear { h_min: 0.5 }, 3).unwrap();
    unsafe {
        assert_eq!(pl_instance_peak_count(inst), 5);
        assert_eq!(pl_instance_length(inst), 20);
        assert_eq!(pl_instance_seed(inst), 3);
        for i in 0..5 {
            let mut h = 0.0;
            assert_eq!(pl_instance_height(inst, i, &mut h), PlStatus::Ok);
            assert_eq!(h, lib.heights()[i]);
            let mut bits = [9u8; 20];
            assert_eq!(pl_instance_peak(inst, i, bits.as_mut_ptr(), 20), PlStatus::Ok);
            assert_eq!(bits.to_vec(), lib.peaks()[i].to_bits());
        }
        let mut h = 0.0;
        assert_eq!(pl_instance_height(inst, 5, &mut h), PlStatus::InvalidArgument);
        assert!(last_error().contains("out of range"));
        let mut bits = [0u8; 19];
        assert_eq!(pl_instance_peak(inst, 0, bits.as_mut_ptr(), 19), PlStatus::LengthMismatch);
        pl_instance_free(inst);
    }
}

#[test]
fn evaluate_and_hamming() {
    let inst = generate(3, 16, 8);
    unsafe {
        let mut peak = [0u8; 16];
        pl_instance_peak(inst, 0, peak.as_mut_ptr(), 16);
        let mut e = PlEvalResult::default();
        assert_eq!(pl_evaluate(inst, peak.as_ptr(), 16, &mut e), PlStatus::Ok);
        assert_eq!(e, PlEvalResult { fitness: 1.0, nearest_peak: 0, distance: 0 });

        let mut other = peak;
        other[0] ^= 1;
        other[5] ^= 1;
        let mut d = 0usize;
        assert_eq!(pl_hamming(peak.as_ptr(), other.as_ptr(), 16, &mut d), PlStatus::Ok);
        assert_eq!(d, 2);

        assert_eq!(pl_evaluate(inst, peak.as_ptr(), 15, &mut e), PlStatus::LengthMismatch);
        let bad = [2u8; 16];
        assert_ne!(pl_evaluate(inst, bad.as_ptr(), 16, &mut e), PlStatus::Ok);
        assert!(!last_error().is_empty());
        assert_eq!(pl_evaluate(inst, ptr::null(), 16, &mut e), PlStatus::NullPointer);
        assert_eq!(pl_evaluate(ptr::null(), peak.as_ptr(), 16, &mut e), PlStatus::NullPointer);
        assert_eq!(last_error(), "instance is null");
        pl_instance_free(inst);
    }
}

#[test]
fn serialize_parse_round_trip() {
    let inst = generate(4, 12, 21);
    unsafe {
        let mut text = ptr::null_mut();
        assert_eq!(pl_instance_serialize(inst, &mut text), PlStatus::Ok);
        let owned = CStr::from_ptr(text).to_owned();
        let mut back = ptr::null_mut();
        assert_eq!(pl_instance_parse(owned.as_ptr(), &mut back), PlStatus::Ok);
        let mut again = ptr::null_mut();
        pl_instance_serialize(back, &mut again);
        assert_eq!(CStr::from_ptr(again), owned.as_c_str());
        pl_string_free(text);
        pl_string_free(again);
        pl_instance_free(back);
        pl_instance_free(inst);

        let junk = CString::new("2 4 equal 0\n1\n0000\n1111\n").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(pl_instance_parse(junk.as_ptr(), &mut out), PlStatus::ParseError);
        assert!(out.is_null());
        assert!(last_error().starts_with("line 2"), "{}", last_error());
    }
}

#[test]
fn generation_errors_are_reported() {
    let mut inst = ptr::null_mut();
    unsafe {
        assert_eq!(
            pl_instance_generate(5, 2, PlScheme::Equal, 0.0, 0, &mut inst),
            PlStatus::InvalidArgument
        );
        assert!(inst.is_null());
        assert_eq!(
            pl_instance_generate(2, 8, PlScheme::Linear, 1.5, 0, &mut inst),
            PlStatus::InvalidArgument
        );
        assert_eq!(
            pl_instance_generate(2, 8, PlScheme::Equal, 0.0, 0, ptr::null_mut()),
            PlStatus::NullPointer
        );
        // A good call clears the message.
        let ok = generate(2, 8, 0);
        assert_eq!(last_error(), "");
        pl_instance_free(ok);
        pl_instance_free(ptr::null_mut());
        pl_string_free(ptr::null_mut());
    }
}

#[test]
fn ga_run_through_the_boundary() {
    let inst = generate(1, 40, 2);
    unsafe {
        let mut cfg = std::mem::MaybeUninit::<PlGaConfig>::uninit();
        assert_eq!(pl_ga_config_standard(40, 60, 9, cfg.as_mut_ptr()), PlStatus::Ok);
        let cfg = cfg.assume_init();
        assert_eq!(cfg.population_size, 60);
        assert_eq!(cfg.crossover, PlCrossover::TwoPoint);
        assert_eq!(cfg.selection, PlSelection::BinaryTournament);
        assert_eq!(cfg.mutation_rate, 1.0 / 40.0);
        assert_eq!(cfg.max_evaluations, 30_000);

        let mut run = ptr::null_mut();
        assert_eq!(pl_ga_run(inst, &cfg, &mut run), PlStatus::Ok);
        let mut outcome = PlOutcome::BudgetExhausted;
        assert_eq!(pl_ga_run_outcome(run, &mut outcome), PlStatus::Ok);
        assert_eq!(outcome, PlOutcome::OptimumFound);
        let mut evals = 0u64;
        assert_eq!(pl_ga_run_evaluations_to_success(run, &mut evals), PlStatus::Ok);
        assert_eq!(evals, pl_ga_run_evaluations_used(run));
        assert_eq!(evals, 60 * pl_ga_run_generations(run) as u64);

        let lib = peaklab::run_ga(
            &peaklab::GaConfig::standard(40, 60, 9),
            &peaklab::generate_instance(1, 40, peaklab::HeightScheme::Linear { h_min: 0.5 }, 2).unwrap(),
        )
        .unwrap();
        let mut csv = ptr::null_mut();
        assert_eq!(pl_ga_run_trace_csv(run, &mut csv), PlStatus::Ok);
        assert_eq!(CStr::from_ptr(csv).to_str().unwrap(), peaklab::telemetry::trace_csv(&lib));
        pl_string_free(csv);

        let mut peak = 0usize;
        let st = pl_ga_run_converged_peak(run, &mut peak);
        assert!(st == PlStatus::Ok || st == PlStatus::NotAvailable);
        pl_ga_run_free(run);

        let mut bad = cfg;
        bad.population_size = 61;
        let mut run = ptr::null_mut();
        assert_eq!(pl_ga_run(inst, &bad, &mut run), PlStatus::InvalidArgument);
        assert!(run.is_null());
        assert_eq!(pl_ga_run(inst, ptr::null(), &mut run), PlStatus::NullPointer);
        assert_eq!(pl_ga_run_generations(ptr::null()), 0);
        let mut o = PlOutcome::OptimumFound;
        assert_eq!(pl_ga_run_outcome(ptr::null(), &mut o), PlStatus::NullPointer);
        pl_instance_free(inst);
    }
}

#[test]
fn failed_run_reports_not_available() {
    let inst = generate(100, 100, 1);
    unsafe {
        let mut cfg = std::mem::MaybeUninit::<PlGaConfig>::uninit();
        pl_ga_config_standard(100, 20, 3, cfg.as_mut_ptr());
        let mut cfg = cfg.assume_init();
        cfg.max_evaluations = 200;
        let mut run = ptr::null_mut();
        assert_eq!(pl_ga_run(inst, &cfg, &mut run), PlStatus::Ok);
        let mut evals = 0u64;
        assert_eq!(pl_ga_run_evaluations_to_success(run, &mut evals), PlStatus::NotAvailable);
        assert_eq!(pl_ga_run_evaluations_used(run), 200);
        pl_ga_run_free(run);
        pl_instance_free(inst);
    }
}

#[test]
fn climber_through_the_boundary() {
    let inst = generate(10, 50, 6);
    let cfg = PlClimbConfig {
        max_evaluations: 1_000_000,
        success_rule: PlSuccessRule::GlobalPeak,
        seed: 4,
    };
    let mut out = PlClimbOutcome::default();
    unsafe {
        assert_eq!(pl_climb(inst, &cfg, &mut out), PlStatus::Ok);
        let lib = peaklab::multi_restart_climb(
            &peaklab::generate_instance(10, 50, peaklab::HeightScheme::Linear { h_min: 0.5 }, 6).unwrap(),
            &peaklab::ClimbConfig::new(1_000_000, 4),
        )
        .unwrap();
        assert!(out.success);
        assert_eq!(out.evaluations_used, lib.evaluations_used);
        assert_eq!(out.restarts, lib.restarts);
        assert_eq!(out.best_fitness, 1.0);

        let zero = PlClimbConfig { max_evaluations: 0, ..cfg };
        assert_eq!(pl_climb(inst, &zero, &mut out), PlStatus::InvalidArgument);
        assert_eq!(pl_climb(inst, &cfg, ptr::null_mut()), PlStatus::NullPointer);
        pl_instance_free(inst);
    }
}
