//! The check registry behind `superfda verify`: every verification grouped by id prefix,
//! run in parallel, and collected into one sorted report.

use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rayon::prelude::*;

use crate::algebra::DgaMorphism;
use crate::brane_cocycles::{
    calibration_entry, l_s4, nonexact_brane_cocycles, report_d10, t_duality_coefficients, twisted_ku, verify_m2m5, verify_m_reduction, verify_tower,
    CoefficientWindow, Families,
};
use crate::catalog;
use crate::clifford::{check_foundation, check_hermiticity_pattern, check_iib_relations, CliffordModel};
use crate::cyclification::{cyclify, fiber_sequence_check, verify_bijection, verify_naturality_square};
use crate::error::{Error, Result};
use crate::fda::FdaDocument;
use crate::report::{Report, ReportEntry};
use crate::superspace::{verify_extension_tower, Spacetimes};
use crate::tduality::{
    s_duality_check, verify_correspondence, verify_f_theory_algebra, verify_f_theory_diagram, verify_hori_capped, verify_phi_t, verify_t_duality_theorem,
    verify_tduality_fiber_sequence, verify_tfold, TDualitySuite, TFoldVariant, DEFAULT_CAP,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    /// Degree cap for truncated series (the Hori checks).
    pub max_degree: i32,
    /// KU window; the ΣKU window is one step in from each end.
    pub window: CoefficientWindow,
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
}

impl Default for Flags {
    fn default() -> Self {
        Flags { max_degree: DEFAULT_CAP, window: CoefficientWindow::KU, threads: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Parses `LO:HI`. Only windows that start at 0 keep the bottom of both towers, and the
/// IIA table stops at D10, so `LO` must be 0 and `HI` an even number in 2..=10.
pub fn parse_window(s: &str) -> std::result::Result<CoefficientWindow, UsageError> {
    let bad = || UsageError(format!("invalid window `{s}`: expected 0:HI with HI even, 2 <= HI <= 10"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let (lo, hi): (i32, i32) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
    if lo != 0 || hi % 2 != 0 || !(2..=10).contains(&hi) {
        return Err(bad());
    }
    Ok(CoefficientWindow { min: lo, max: hi })
}

/// Lazily built inputs. The default window reuses the process-wide caches.
pub struct Context {
    pub flags: Flags,
    families: OnceLock<std::result::Result<Families, Error>>,
    tduality: OnceLock<std::result::Result<TDualitySuite, Error>>,
}

impl Context {
    pub fn new(flags: Flags) -> Self {
        Context { flags, families: OnceLock::new(), tduality: OnceLock::new() }
    }

    fn is_default_window(&self) -> bool {
        self.flags.window == CoefficientWindow::KU
    }

    pub fn model(&self) -> &'static CliffordModel {
        CliffordModel::shared()
    }

    pub fn spacetimes(&self) -> &'static Spacetimes {
        Spacetimes::shared()
    }

    pub fn families(&self) -> Result<&Families> {
        if self.is_default_window() {
            return Ok(Families::shared());
        }
        self.families
            .get_or_init(|| Families::build_windowed(self.spacetimes(), self.model(), self.flags.window))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn tduality(&self) -> Result<&TDualitySuite> {
        if self.is_default_window() {
            return Ok(TDualitySuite::shared());
        }
        let f = self.families()?;
        self.tduality.get_or_init(|| TDualitySuite::build(self.spacetimes(), f)).as_ref().map_err(Clone::clone)
    }

    /// Inputs above `window.max + 2` would need cocycles outside the window.
    pub fn hori_cap(&self) -> i32 {
        self.flags.max_degree.min(self.flags.window.max + 2)
    }
}

type Runner = fn(&Context) -> Result<Vec<ReportEntry>>;

/// A group of checks and the id prefixes its entries carry.
pub struct Check {
    pub ids: &'static [&'static str],
    pub run: Runner,
}

fn bijections(ctx: &Context) -> Result<Vec<ReportEntry>> {
    let s = ctx.spacetimes();
    let f = ctx.families()?;
    let cases = [
        ("cyc.mbranes", DgaMorphism::compose(&s.m11_to_ext()?, &f.mbranes.morphism)?, &s.ext_m, &f.mbranes.coefficients),
        ("cyc.iia", DgaMorphism::compose(&s.iia_to_ext()?, &f.iia.morphism)?, &s.ext_iia, &f.iia.coefficients),
        ("cyc.iib", DgaMorphism::compose(&s.iib_to_ext()?, &f.iib.morphism)?, &s.ext_iib, &f.iib.coefficients),
    ];
    let out: Vec<Vec<ReportEntry>> = cases
        .par_iter()
        .map(|(prefix, phi, ext, coeff)| {
            let cyc = rayon::join(|| cyclify(coeff), || cyclify(&ext.result));
            match cyc {
                (Ok(ch), Ok(ce)) => verify_bijection(prefix, phi, ext, &ch, &ce),
                (Err(e), _) | (_, Err(e)) => vec![ReportEntry::fail(&format!("{prefix}.reduce"), format!("cyclification failed: {e}"), Some(e.to_string()))],
            }
        })
        .collect();
    Ok(out.into_iter().flatten().collect())
}

fn fiber_sequences(ctx: &Context) -> Result<Vec<ReportEntry>> {
    let f = ctx.families()?;
    let algebras = [
        ("cyc.fiberseq.ls4", Arc::new(l_s4())),
        ("cyc.fiberseq.bt1", Arc::new(t_duality_coefficients())),
        ("cyc.fiberseq.ku", f.iia.coefficients.clone()),
        ("cyc.fiberseq.sku", f.iib.coefficients.clone()),
    ];
    Ok(algebras
        .par_iter()
        .map(|(id, h)| match cyclify(h) {
            Ok(c) => fiber_sequence_check(id, &c),
            Err(e) => ReportEntry::fail(id, format!("cyclification failed: {e}"), Some(e.to_string())),
        })
        .collect())
}

/// The window-shrink inclusion CE(ku, smaller window) → CE(ku) composed with the oxidized IIA family.
fn naturality(ctx: &Context) -> Result<Vec<ReportEntry>> {
    let s = ctx.spacetimes();
    let f = ctx.families()?;
    let w = ctx.flags.window;
    let id = "cyc.naturality.window";
    if w.max - 2 < w.min {
        return Ok(vec![ReportEntry::skip(id, "window too small to shrink")]);
    }
    let small = Arc::new(twisted_ku(CoefficientWindow { min: w.min, max: w.max - 2 })?);
    let big = f.iia.coefficients.clone();
    let g = DgaMorphism::by_name(small.clone(), big.clone(), vec![])?;
    let phi = DgaMorphism::compose(&s.iia_to_ext()?, &f.iia.morphism)?;
    let (c1, c2) = rayon::join(|| cyclify(&small), || cyclify(&big));
    let (c1, c2) = (c1?, c2?);
    let id_g = DgaMorphism::identity(big.clone());
    Ok(vec![
        verify_naturality_square(id, &g, &phi, &s.ext_iia, &c1, &c2),
        verify_naturality_square("cyc.naturality.identity", &id_g, &phi, &s.ext_iia, &c2, &c2),
    ])
}

/// Serialize → parse → serialize is a fixpoint and the parsed algebras equal the originals.
fn round_trips(_: &Context) -> Result<Vec<ReportEntry>> {
    let names: Vec<(String, bool)> =
        catalog::ALGEBRAS.iter().map(|n| (n.to_string(), false)).chain(catalog::FAMILIES.iter().map(|n| (n.to_string(), true))).collect();
    Ok(names
        .par_iter()
        .map(|(name, family)| {
            let t = Instant::now();
            let id = format!("fda.roundtrip.{}", if *family { format!("family.{name}") } else { name.clone() });
            let doc = if *family { catalog::family_document(name) } else { catalog::algebra_document(name) };
            let mut e = match doc {
                Err(err) => ReportEntry::fail(&id, err.to_string(), Some(err.to_string())),
                Ok(doc) => {
                    let text = doc.to_text();
                    match FdaDocument::parse(&text) {
                        Err(d) => ReportEntry::fail(&id, "serialized text does not parse", Some(d[0].to_string())),
                        Ok(back) => {
                            let same_text = back.to_text() == text;
                            let same_algebras = doc.blocks.iter().zip(&back.blocks).all(|((a, _), (b, _))| match (a, b) {
                                (crate::fda::Block::Algebra { algebra: x, .. }, crate::fda::Block::Algebra { algebra: y, .. }) => x == y,
                                _ => true,
                            });
                            ReportEntry::from_bool(
                                &id,
                                same_text && same_algebras && doc.blocks.len() == back.blocks.len(),
                                format!("{} blocks, {} bytes, text fixpoint {same_text}, algebras equal {same_algebras}", doc.blocks.len(), text.len()),
                            )
                        }
                    }
                }
            };
            e.millis = t.elapsed().as_millis() as u64;
            e
        })
        .collect())
}

pub const CHECKS: &[Check] = &[
    Check { ids: &["clifford.anticommutators", "clifford.charge_conjugation"], run: |c| Ok(check_foundation(c.model())) },
    Check { ids: &["clifford.iib"], run: |c| Ok(check_iib_relations(c.model())) },
    Check { ids: &["clifford.hermiticity"], run: |c| Ok(check_hermiticity_pattern(c.model())) },
    Check { ids: &["superspace"], run: |c| Ok(verify_extension_tower(c.spacetimes())) },
    Check { ids: &["mbranes.m2", "mbranes.m5", "mbranes.morphism"], run: |c| Ok(verify_m2m5(&c.families()?.mbranes, c.model())) },
    Check {
        ids: &["mbranes.reduce"],
        run: |c| {
            let f = c.families()?;
            verify_m_reduction(c.spacetimes(), &f.mbranes, &f.iia)
        },
    },
    Check { ids: &["mbranes.nonexact", "iia.nonexact"], run: |c| Ok(nonexact_brane_cocycles(c.families()?)) },
    Check { ids: &["iia.tower", "iia.morphism"], run: |c| Ok(verify_tower(&c.families()?.iia)) },
    Check { ids: &["iib.tower", "iib.morphism"], run: |c| Ok(verify_tower(&c.families()?.iib)) },
    Check { ids: &["iia.d10"], run: |c| Ok(report_d10(&c.families()?.iia)) },
    Check { ids: &["iia.calibration"], run: |c| Ok(vec![calibration_entry(&c.families()?.iia)]) },
    Check { ids: &["iib.calibration"], run: |c| Ok(vec![calibration_entry(&c.families()?.iib)]) },
    Check { ids: &["cyc.mbranes", "cyc.iia", "cyc.iib"], run: bijections },
    Check { ids: &["cyc.fiberseq"], run: fiber_sequences },
    Check { ids: &["cyc.naturality"], run: naturality },
    Check { ids: &["tduality.display", "tduality.phi_t"], run: |c| Ok(verify_phi_t(c.tduality()?)) },
    Check { ids: &["tduality.slice", "tduality.d", "tduality.global"], run: |c| Ok(verify_t_duality_theorem(c.tduality()?, c.spacetimes(), c.families()?)) },
    Check { ids: &["corr"], run: |c| Ok(verify_correspondence(&c.tduality()?.corr, c.spacetimes())) },
    Check { ids: &["hori"], run: |c| Ok(verify_hori_capped(c.tduality()?, c.families()?, c.hori_cap())) },
    Check { ids: &["t2.fiberseq"], run: |c| Ok(verify_tduality_fiber_sequence(c.tduality()?)) },
    Check { ids: &["tfold.a"], run: |c| Ok(vec![verify_tfold(TFoldVariant::A, c.spacetimes(), c.families()?, &c.tduality()?.corr)]) },
    Check { ids: &["tfold.b"], run: |c| Ok(vec![verify_tfold(TFoldVariant::B, c.spacetimes(), c.families()?, &c.tduality()?.corr)]) },
    Check { ids: &["ftheory.diagram"], run: |c| Ok(verify_f_theory_diagram(c.spacetimes(), &c.tduality()?.corr, c.families()?)) },
    Check { ids: &["ftheory.sduality"], run: |c| Ok(s_duality_check(c.spacetimes(), c.families()?, c.model())) },
    Check { ids: &["ftheory.algebra"], run: |c| Ok(vec![verify_f_theory_algebra(c.spacetimes(), c.model())]) },
    Check { ids: &["fda.roundtrip"], run: round_trips },
];

/// Whether an entry id falls under a selector: `all`, a prefix ending in `.`, or a dotted
/// path matching whole segments (`tduality.d1` matches `tduality.d1` but not `tduality.d10`).
pub fn selects(selector: &str, id: &str) -> bool {
    if selector == "all" {
        return true;
    }
    if selector.ends_with('.') {
        return id.starts_with(selector);
    }
    id == selector || id.strip_prefix(selector).is_some_and(|r| r.starts_with('.'))
}

fn may_produce(check: &Check, selector: &str) -> bool {
    let sel = selector.trim_end_matches('.');
    selector == "all" || check.ids.iter().any(|p| p.starts_with(sel) || sel.starts_with(p))
}

/// Runs every check that can produce an entry under `selector` and keeps the matching entries.
pub fn run(selector: &str, flags: &Flags) -> std::result::Result<Report, UsageError> {
    if selector.is_empty() {
        return Err(UsageError("empty selector".into()));
    }
    let checks: Vec<&Check> = CHECKS.iter().filter(|c| may_produce(c, selector)).collect();
    if checks.is_empty() {
        return Err(UsageError(format!("selector `{selector}` matches no check")));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = flags.threads {
        if n == 0 {
            return Err(UsageError("--threads must be positive".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| UsageError(format!("thread pool: {e}")))?;
    let ctx = Context::new(flags.clone());
    let entries: Vec<ReportEntry> = pool.install(|| {
        checks
            .par_iter()
            .flat_map_iter(|c| {
                let t = Instant::now();
                (c.run)(&ctx).unwrap_or_else(|e| {
                    let mut f = ReportEntry::fail(&format!("{}.setup", c.ids[0].trim_end_matches('.')), format!("construction failed: {e}"), Some(e.to_string()));
                    f.millis = t.elapsed().as_millis() as u64;
                    vec![f]
                })
            })
            .collect()
    });
    let entries: Vec<ReportEntry> = entries.into_iter().filter(|e| selects(selector, &e.id) || e.id.ends_with(".setup")).collect();
    if entries.is_empty() {
        return Err(UsageError(format!("selector `{selector}` matches no check")));
    }
    Ok(Report::new(ctx.model().fingerprint(), entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dotted_selection() {
        assert!(selects("tduality.d1", "tduality.d1"));
        assert!(!selects("tduality.d1", "tduality.d10"));
        assert!(selects("tduality.", "tduality.d10"));
        assert!(selects("hori", "hori.identity"));
        assert!(!selects("hori", "horizon"));
        assert!(selects("all", "anything"));
    }

    #[test]
    fn windows() {
        assert_eq!(parse_window("0:10").unwrap(), CoefficientWindow::KU);
        assert_eq!(parse_window("0:6").unwrap().shifted(), CoefficientWindow { min: 1, max: 5 });
        for bad in ["2:10", "0:7", "0:12", "x", "0:0"] {
            assert!(parse_window(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn unknown_selector_is_usage_error() {
        assert!(run("nosuch.thing", &Flags::default()).is_err());
        assert!(run("", &Flags::default()).is_err());
    }

    #[test]
    fn single_clifford_check() {
        let r = run("clifford.anticommutators", &Flags::default()).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert!(r.all_pass());
    }
}
