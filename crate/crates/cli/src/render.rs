//! Plain-text rendering of reports.

use std::fmt::Write;

use g2kit::exterior::SerializedForm;
use g2kit::report::Report;

fn form_text(f: &SerializedForm) -> String {
    if f.0.is_empty() {
        return "0".into();
    }
    f.0.iter()
        .map(|(names, c)| {
            let mono = if names.is_empty() {
                "1".to_string()
            } else {
                names.iter().map(|n| format!("d{n}")).collect::<Vec<_>>().join("^")
            };
            format!("({c}) {mono}")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn tuple<T: ToString>(v: &[T]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

pub fn text(report: &Report) -> String {
    let mut out = String::new();
    if let Some(v) = &report.verdict {
        writeln!(out, "{v}").unwrap();
        writeln!(out).unwrap();
    }
    if let Some(g) = &report.group {
        writeln!(out, "group order: {}", g.order).unwrap();
        writeln!(out, "generators: {}", g.generators.join(", ")).unwrap();
        for (i, e) in g.elements.iter().enumerate() {
            writeln!(out, "  {:>3}  {:<28} translation {}", i, e.word, tuple(&e.translation)).unwrap();
        }
        writeln!(out).unwrap();
    }
    if let Some(strata) = &report.strata {
        writeln!(out, "strata: {}", strata.len()).unwrap();
        writeln!(out, "  {:<5} {:>3} {:>5} {:>2} {:>4}  {:<24} {:<36} H^1", "label", "dim", "orbit", "m", "c", "stabilizer", "basepoint").unwrap();
        for s in strata {
            let h1 = s.cohomology.get(1).map(|b| b.iter().map(form_text).collect::<Vec<_>>().join(", ")).unwrap_or_default();
            writeln!(
                out,
                "  {:<5} {:>3} {:>5} {:>2} {:>4}  {:<24} {:<36} {}",
                s.label,
                s.dimension,
                s.orbit_size,
                s.multiplicity,
                s.calibration,
                s.stabilizer,
                tuple(&s.basepoint),
                h1
            )
            .unwrap();
        }
        writeln!(out).unwrap();
    }
    if let Some(b) = &report.betti {
        writeln!(out, "betti numbers").unwrap();
        writeln!(out, "  orbifold X : {}", tuple(&b.orbifold)).unwrap();
        writeln!(out, "  resolution : {}", tuple(&b.model)).unwrap();
        if let Some(spaces) = &report.cohomology {
            for s in spaces.iter().filter(|s| !s.basis.is_empty()) {
                writeln!(out, "  H^{}(X):", s.degree).unwrap();
                for f in &s.basis {
                    writeln!(out, "    {}", form_text(f)).unwrap();
                }
            }
        }
        writeln!(out).unwrap();
    }
    if let Some(pds) = &report.poincare_duals {
        writeln!(out, "Poincare duals").unwrap();
        for p in pds {
            writeln!(out, "  PD[{}] = {}", p.stratum, p.text).unwrap();
        }
        writeln!(out).unwrap();
    }
    if let Some(m) = &report.massey {
        writeln!(out, "triple Massey product <a, b, c>").unwrap();
        writeln!(out, "  a = {}", m.triple[0]).unwrap();
        writeln!(out, "  b = {}", m.triple[1]).unwrap();
        writeln!(out, "  c = {}", m.triple[2]).unwrap();
        writeln!(out, "  a.b = {}, b.c = {}", zero_text(&m.ab), zero_text(&m.bc)).unwrap();
        let ends: Vec<String> =
            m.boundary.iter().map(|b| format!("{}{}[{}]", if b.sign > 0 { "+" } else { "-" }, b.stratum, b.member)).collect();
        writeln!(out, "  cobordism boundary: {}", if ends.is_empty() { "empty".into() } else { ends.join(" ") }).unwrap();
        writeln!(out, "  intersections: {}", m.intersections.len()).unwrap();
        for p in &m.intersections {
            writeln!(out, "    {}[{}] at {} (s = {}), sign {:+}", p.stratum, p.member, tuple(&p.point.iter().map(g2kit::linalg::format_rational).collect::<Vec<_>>()), g2kit::linalg::format_rational(&p.s), p.sign).unwrap();
        }
        for c in &m.counts {
            writeln!(out, "  sigma({}) = {} (signed total {})", c.stratum, g2kit::linalg::format_rational(&c.sigma), c.total).unwrap();
        }
        writeln!(out, "  value (degree {}) = {}", m.degree, m.value_text).unwrap();
        writeln!(out, "  ideal rank {}, with value {}", m.ideal_rank, m.augmented_rank).unwrap();
        writeln!(out, "  value in ideal: {}", m.member).unwrap();
    }
    out
}

fn zero_text(c: &g2kit::resolution::ModelClass) -> &'static str {
    if c.is_zero() {
        "0"
    } else {
        "nonzero"
    }
}
