use std::f64::consts::PI;

use fucik::analysis::{
    asymptote_consistency, asymptote_rule, build_report, checked_asymptotes, compact_support_gap, count_quadrant,
    signed_parts_overlap, Total,
};
use fucik::shooting::Branch;
use fucik::{Preset, Problem, Quadrant, SpectrumOptions};

fn preset(name: &str) -> Problem {
    name.parse::<Preset>().unwrap().problem().unwrap()
}

fn opts() -> SpectrumOptions<f64> {
    SpectrumOptions::default()
}

#[test]
fn sine_counts_in_mixed_quadrants() {
    for n in 1..=3usize {
        let p = preset(&format!("sine:{}", (n as f64 + 1.0) * PI));
        for q in [Quadrant::Pm, Quadrant::Mp] {
            let c = count_quadrant(&p, q, 2 * n + 2, &opts()).unwrap();
            assert_eq!(c.total, Total::Exact(2 * n - 1), "N = {n} {q}");
            assert!(c.parity_ok());
            assert!(!c.symbolically_infinite);
        }
    }
}

#[test]
fn overlapping_parts_are_flagged_infinite() {
    let p = preset("sine");
    assert!(signed_parts_overlap(&p, Quadrant::Pp));
    assert!(!signed_parts_overlap(&p, Quadrant::Pm));
    let c = count_quadrant(&p, Quadrant::Pp, 4, &opts()).unwrap();
    assert!(c.symbolically_infinite);
    assert!(matches!(c.total, Total::AtLeast(_)));
}

#[test]
fn alternating_bumps_hit_their_targets() {
    for (arg, want) in [
        ("1,0,2,1", [3, 1, 5, 3]),
        ("0,2,0,1", [1, 5, 1, 3]),
        ("2,2,2,2", [5, 5, 5, 5]),
        ("0,0,0,0", [1, 1, 1, 1]),
    ] {
        let p = preset(&format!("alternating_bumps:{arg}"));
        for (q, want) in [Quadrant::Pp, Quadrant::Mm, Quadrant::Pm, Quadrant::Mp]
            .into_iter()
            .zip(want)
        {
            let c = count_quadrant(&p, q, want + 3, &opts()).unwrap();
            assert_eq!(c.total, Total::Exact(want), "{arg} {q}");
        }
    }
}

#[test]
fn classical_first_curves_approach_their_levels() {
    let p = preset("classical");
    for branch in Branch::BOTH {
        let check = asymptote_consistency(&p, Quadrant::Pp, branch, Some(1e3), 4, &opts()).unwrap();
        assert!((check.horizontal - 1.0).abs() < 1e-6);
        assert!(check.monotone);
        // closed form: 1 / sqrt(b) = 1 - 1 / sqrt(a)
        for probe in &check.probes {
            let exact = (1.0 - 1.0 / probe.a.sqrt()).powi(-2);
            assert!(((probe.b - exact) / exact).abs() < 1e-7);
            assert!(probe.b > check.horizontal);
        }
    }
}

#[test]
fn asymptote_table_matches_the_worked_cases() {
    let rule = asymptote_rule(Quadrant::Pm, Branch::Gt);
    assert_eq!(rule.case, "v");
    assert_eq!(asymptote_rule(Quadrant::Pp, Branch::Gt).case, "i");
    assert_eq!(asymptote_rule(Quadrant::Mp, Branch::Lt).case, "viii");
    let p = preset("sine");
    let asym = checked_asymptotes(&p, Quadrant::Pm, Branch::Gt, &opts())
        .unwrap()
        .unwrap();
    assert!(asym.horizontal.unwrap() < 0.0);
    assert!(checked_asymptotes(&p, Quadrant::Pm, Branch::Lt, &opts())
        .unwrap()
        .is_none());
}

#[test]
fn compact_support_iff_positive_gap() {
    let o = opts();
    for (name, compact) in [
        ("bump", true),
        ("bump:0.5,1.5", true),
        ("classical", false),
        ("remark_3_9", false),
    ] {
        let r = compact_support_gap(&preset(name), &o).unwrap();
        assert_eq!(r.compact_support, compact, "{name}");
        assert_eq!(r.gap > r.threshold, compact, "{name}: gap {}", r.gap);
        assert!(r.consistent);
    }
}

#[test]
fn report_serializes() {
    let p = preset("example_3_13");
    let report = build_report(&p, &Quadrant::ALL, 5, &opts()).unwrap();
    assert_eq!(report.per_quadrant.len(), 4);
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["per_quadrant"]["pm"]["total"]["kind"], "exact");
    assert_eq!(json["per_quadrant"]["pm"]["total"]["value"], 1);
}
