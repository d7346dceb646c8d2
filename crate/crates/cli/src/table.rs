use std::fmt::Write;

use brkit_core::{
    DegreeReport, PolySystem, ReductionTrace, RegularInstance, RegularityCertificate, RootSet,
};

use crate::{MvOutput, PerturbOutput};

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

fn row(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key:<22}{value}");
}

pub fn mixed_volume(r: &MvOutput) -> String {
    format!("{}\n", r.mixed_volume)
}

pub fn certificate(c: &RegularityCertificate) -> String {
    let mut s = String::new();
    row(&mut s, "verdict", format!("{:?}", c.verdict).to_lowercase());
    row(&mut s, "min |det J|", opt(c.min_abs_jac_det.map(|v| format!("{v:.6e}"))));
    row(&mut s, "tolerance", format!("{:e}", c.tolerance));
    row(&mut s, "zeros checked", c.roots_checked);
    s
}

pub fn roots(r: &RootSet, c: &RegularityCertificate) -> String {
    let mut s = String::new();
    row(&mut s, "zeros", r.len());
    row(&mut s, "target", opt(r.target));
    row(&mut s, "complete", r.complete);
    for (i, z) in r.roots.iter().enumerate() {
        let coords: Vec<String> = z.iter().map(|c| format!("{:+.10}{:+.10}i", c.re, c.im)).collect();
        let _ = writeln!(s, "  [{i}] ({})  |det J| = {:.3e}", coords.join(", "), r.jac_dets[i]);
    }
    s + &certificate(c)
}

pub fn degree(r: &DegreeReport) -> String {
    let mut s = String::new();
    row(&mut s, "dimension", r.dim);
    row(&mut s, "bezout bound", r.bezout_bound);
    row(&mut s, "mixed volume", opt(r.value_mv));
    row(&mut s, "zero count", opt(r.value_roots));
    if let Some(e) = &r.value_integral {
        row(&mut s, "integral", format!("{:.4} +/- {:.4}", e.estimate, e.std_error));
    } else {
        row(&mut s, "integral", "-");
    }
    row(&mut s, "consistent", r.consistent);
    row(&mut s, "degree", opt(r.degree()));
    for n in &r.notes {
        row(&mut s, "note", n);
    }
    s
}

fn system(out: &mut String, p: &PolySystem) {
    for (j, f) in p.polys().iter().enumerate() {
        let _ = writeln!(out, "  f{} = {f}", j + 1);
    }
}

pub fn perturbed(r: &PerturbOutput) -> String {
    let mut s = String::new();
    row(&mut s, "epsilon", format!("{:e}", r.epsilon));
    if let Some(p) = &r.plan {
        row(&mut s, "root bound", p.root_bound);
        row(&mut s, "boundary minimum", format!("{:e}", p.delta0));
    }
    system(&mut s, &r.system);
    s
}

pub fn regular(r: &RegularInstance) -> String {
    let mut s = String::new();
    row(&mut s, "attempts", r.attempts);
    row(&mut s, "zeros", r.roots.len());
    row(&mut s, "epsilon", format!("{:e}", r.plan.epsilon));
    system(&mut s, &r.system);
    s + &certificate(&r.certificate)
}

pub fn trace(t: &ReductionTrace) -> String {
    let mut s = String::new();
    row(&mut s, "n", t.matrix.n());
    row(&mut s, "permanent", &t.permanent);
    row(&mut s, "mixed volume", &t.mixed_volume);
    row(&mut s, "root search", format!("{:?}", t.root_search).to_lowercase());
    row(&mut s, "reported degree", opt(t.reported_degree));
    row(&mut s, "constants nonzero", t.constants_nonzero);
    row(&mut s, "nonneg. coefficients", t.nonnegative_coefficients);
    row(&mut s, "agreement", t.agreement);
    s
}
