//! Free loop algebras 𝔏h, cyclifications 𝔏h/ℝ, and the reduction/oxidation bijection
//! for 2-cocycle extensions.

use std::sync::Arc;
use std::time::Instant;

use crate::algebra::{Bidegree, DgaMorphism, Element, FreeDga, GeneratorTable};
use crate::error::{Error, Result};
use crate::report::ReportEntry;
use crate::scalar::GaussianRational;
use crate::superspace::ExtensionStep;

pub const SHIFT: Bidegree = Bidegree { n: -1, parity: crate::algebra::Parity::Even };
pub const OMEGA: &str = "omega2";

pub fn shifted_name(name: &str) -> String {
    format!("s_{name}")
}

/// 𝔏h/ℝ together with the pieces needed to talk about it: `base` generators keep their
/// ids, `s v` sits at `shift[v]`, ω₂ comes last.
#[derive(Clone, Debug)]
pub struct CyclifiedAlgebra {
    pub base: Arc<FreeDga>,
    pub loops: Arc<FreeDga>,
    pub result: Arc<FreeDga>,
    pub shift: Vec<usize>,
    pub omega: usize,
}

fn loop_table(h: &FreeDga, with_omega: bool) -> Result<GeneratorTable> {
    let mut decls: Vec<(String, Bidegree)> = h.generators().iter().map(|g| (g.name.clone(), g.bidegree)).collect();
    for g in h.generators() {
        if g.bidegree.n == 0 {
            return Err(Error::IllegalShift(g.name.clone()));
        }
        decls.push((shifted_name(&g.name), g.bidegree.shifted(SHIFT)));
    }
    if with_omega {
        decls.push((OMEGA.to_string(), Bidegree::even(2)));
    }
    GeneratorTable::new(&decls)
}

/// The derivation `s` on a loop table: `v ↦ s v`, `s v ↦ 0`, `ω₂ ↦ 0`.
fn s_values(n_base: usize, total: usize) -> Vec<Element> {
    (0..total).map(|id| if id < n_base { Element::generator(n_base + id) } else { Element::zero() }).collect()
}

fn loop_differentials(h: &FreeDga, t: &GeneratorTable) -> Vec<Element> {
    let n = h.len();
    let s = s_values(n, t.len());
    let mut d: Vec<Element> = h.differentials().to_vec();
    for v in 0..n {
        d.push(-t.apply_derivation(SHIFT, &s, h.differential(v)));
    }
    d
}

pub fn free_loop(h: &FreeDga) -> Result<FreeDga> {
    let t = loop_table(h, false)?;
    let d = loop_differentials(h, &t);
    FreeDga::declare(format!("L({})", h.label()), t, d)
}

pub fn cyclify(h: &Arc<FreeDga>) -> Result<CyclifiedAlgebra> {
    let loops = Arc::new(free_loop(h)?);
    let n = h.len();
    let t = loop_table(h, true)?;
    let omega = 2 * n;
    let w = Element::generator(omega);
    let mut d = loop_differentials(h, &t);
    for (v, dv) in d.iter_mut().enumerate().take(n) {
        *dv = &*dv + &t.mul(&w, &Element::generator(n + v));
    }
    d.push(Element::zero());
    let result = Arc::new(FreeDga::declare(format!("cyc({})", h.label()), t, d)?);
    Ok(CyclifiedAlgebra { base: h.clone(), loops, result, shift: (n..2 * n).collect(), omega })
}

impl CyclifiedAlgebra {
    pub fn s(&self, x: &Element) -> Element {
        self.result.apply_derivation(SHIFT, &s_values(self.base.len(), self.result.len()), x)
    }

    pub fn omega(&self) -> Element {
        Element::generator(self.omega)
    }

    /// Dual of 𝔏h/ℝ → bℝ: the inclusion ω ↦ ω₂.
    pub fn to_line(&self) -> Result<DgaMorphism> {
        let line = crate::superspace::line_algebra("omega", Bidegree::even(2))?;
        DgaMorphism::new(Arc::new(line), self.result.clone(), vec![self.omega()], false)
    }

    /// Dual of 𝔏h → 𝔏h/ℝ: the quotient setting ω₂ = 0.
    pub fn to_fiber(&self) -> Result<DgaMorphism> {
        let mut images: Vec<Element> = (0..self.loops.len()).map(Element::generator).collect();
        images.push(Element::zero());
        DgaMorphism::new(self.result.clone(), self.loops.clone(), images, false)
    }
}

/// 𝔏(f)/ℝ for an uncurved `f: CE(h₁) → CE(h₂)`.
pub fn cyclify_morphism(f: &DgaMorphism, src: &CyclifiedAlgebra, tgt: &CyclifiedAlgebra) -> Result<DgaMorphism> {
    if f.curved {
        return Err(Error::CurvedInput(format!("{} -> {}", f.source.label(), f.target.label())));
    }
    if *src.base != *f.source || *tgt.base != *f.target {
        return Err(Error::TableMismatch("cyclifications do not match the morphism".into()));
    }
    let mut images = f.images.clone();
    images.extend(f.images.iter().map(|x| tgt.s(x)));
    images.push(tgt.omega());
    DgaMorphism::new(src.result.clone(), tgt.result.clone(), images, false)
}

/// A map into 𝔏h/ℝ sending ω₂ to `slice`, dually CE(𝔏h/ℝ) → CE(g).
#[derive(Clone, Debug, PartialEq)]
pub struct SlicedMorphism {
    pub morphism: DgaMorphism,
    pub slice: Element,
}

impl SlicedMorphism {
    pub fn new(morphism: DgaMorphism, slice: Element, cyc: &CyclifiedAlgebra) -> Result<Self> {
        let w = &morphism.images[cyc.omega];
        if *w != slice {
            return Err(Error::SliceConditionViolated(morphism.target.render_truncated(w, 6)));
        }
        Ok(SlicedMorphism { morphism, slice })
    }
}

fn check_extension(phi: &DgaMorphism, ext: &ExtensionStep) -> Result<()> {
    if *phi.target != *ext.result {
        return Err(Error::NotAnExtension(format!("{} is not {}", phi.target.label(), ext.result.label())));
    }
    if ext.result.bidegree(ext.generator) != Bidegree::even(1) {
        return Err(Error::NotAnExtension("only extensions by a 2-cocycle are reduced".into()));
    }
    Ok(())
}

/// `v ↦ restriction`, `s v ↦ fiber integral`, `ω₂ ↦ c₂`.
pub fn reduce(phi: &DgaMorphism, ext: &ExtensionStep, cyc: &CyclifiedAlgebra) -> Result<SlicedMorphism> {
    check_extension(phi, ext)?;
    if *cyc.base != *phi.source {
        return Err(Error::TableMismatch("cyclification is not of the source".into()));
    }
    let n = phi.source.len();
    let mut images = vec![Element::zero(); cyc.result.len()];
    for v in 0..n {
        let split = ext.split(&phi.images[v]);
        images[v] = split.restriction;
        images[cyc.shift[v]] = split.integral;
    }
    images[cyc.omega] = ext.cocycle.clone();
    let m = DgaMorphism::new(cyc.result.clone(), ext.base.clone(), images, phi.curved)?;
    SlicedMorphism::new(m, ext.cocycle.clone(), cyc)
}

/// `v ↦ ψ(v) − e∧ψ(s v)`, the inverse of [`reduce`].
pub fn oxidize(psi: &SlicedMorphism, ext: &ExtensionStep, cyc: &CyclifiedAlgebra) -> Result<DgaMorphism> {
    if psi.morphism.images[cyc.omega] != ext.cocycle {
        return Err(Error::SliceConditionViolated(ext.base.render_truncated(&psi.morphism.images[cyc.omega], 6)));
    }
    if *psi.morphism.target != *ext.base {
        return Err(Error::NotAnExtension("sliced morphism lands outside the extension base".into()));
    }
    let t = &ext.result;
    let e = Element::generator(ext.generator);
    let images = (0..cyc.base.len())
        .map(|v| &psi.morphism.images[v] - &t.mul(&e, &psi.morphism.images[cyc.shift[v]]))
        .collect();
    DgaMorphism::new(cyc.base.clone(), ext.result.clone(), images, psi.morphism.curved)
}

/// Curved unit CE(𝔏ĝ/ℝ) → CE(g): unshifted generators to themselves with e ↦ 0, shifted
/// ones to 0 with s e ↦ −1, ω₂ ↦ c₂.
pub fn adjunction_unit(ext: &ExtensionStep, cyc_ext: &CyclifiedAlgebra) -> Result<DgaMorphism> {
    if *cyc_ext.base != *ext.result {
        return Err(Error::TableMismatch("cyclification is not of the extension".into()));
    }
    let n = ext.result.len();
    let mut images = vec![Element::zero(); cyc_ext.result.len()];
    for (v, img) in images.iter_mut().enumerate().take(n) {
        if v != ext.generator {
            *img = Element::generator(v);
        }
    }
    images[cyc_ext.shift[ext.generator]] = Element::scalar(-GaussianRational::one());
    images[cyc_ext.omega] = ext.cocycle.clone();
    DgaMorphism::new(cyc_ext.result.clone(), ext.base.clone(), images, true)
}

fn timed(id: &str, start: Instant, r: Result<bool>, ok: &str, bad: &str) -> ReportEntry {
    let mut e = match r {
        Ok(true) => ReportEntry::pass(id, ok),
        Ok(false) => ReportEntry::fail(id, bad, Some("value reported in detail".into())),
        Err(err) => ReportEntry::fail(id, format!("{bad}: {err}"), Some(err.to_string())),
    };
    e.millis = start.elapsed().as_millis() as u64;
    e
}

/// ω₂ ↦ ω₂ is a generator inclusion and the quotient by ω₂ is 𝔏h.
pub fn fiber_sequence_check(id: &str, cyc: &CyclifiedAlgebra) -> ReportEntry {
    let t = Instant::now();
    let r = (|| {
        let line = cyc.to_line()?;
        let quotient = cyc.to_fiber()?;
        let inclusion = line.images[0] == cyc.omega() && cyc.result.differential(cyc.omega).is_zero();
        let composite_zero = quotient.apply(&cyc.omega()).is_zero();
        let fiber_is_loops = (0..cyc.loops.len()).all(|v| *cyc.loops.differential(v) == quotient.apply(cyc.result.differential(v)));
        Ok(inclusion && composite_zero && fiber_is_loops && line.is_valid() && quotient.is_valid())
    })();
    timed(id, t, r, &format!("bR -> {} -> {} is a generator inclusion with quotient the free loop algebra", cyc.result.label(), cyc.loops.label()), "fiber sequence broken")
}

/// `reduce ∘ oxidize = id`, `oxidize ∘ reduce = id`, and `reduce(φ) = unit ∘ 𝔏(φ)/ℝ`.
pub fn verify_bijection(prefix: &str, phi: &DgaMorphism, ext: &ExtensionStep, cyc_h: &CyclifiedAlgebra, cyc_ext: &CyclifiedAlgebra) -> Vec<ReportEntry> {
    let mut out = Vec::new();
    let t = Instant::now();
    let reduced = reduce(phi, ext, cyc_h);
    let reduced = match reduced {
        Ok(r) => r,
        Err(e) => {
            out.push(ReportEntry::fail(&format!("{prefix}.reduce"), format!("reduce failed: {e}"), Some(e.to_string())));
            return out;
        }
    };
    out.push(match reduced.morphism.validate() {
        Ok(()) => {
            let mut e = ReportEntry::pass(&format!("{prefix}.reduce"), format!("reduced morphism {} -> {} is valid", cyc_h.result.label(), ext.base.label()));
            e.millis = t.elapsed().as_millis() as u64;
            e
        }
        Err(d) => ReportEntry::fail(&format!("{prefix}.reduce"), format!("{}: {}", d.generator, d.reason), Some(ext.base.render_truncated(&d.difference, 8))),
    });
    let t = Instant::now();
    let back = oxidize(&reduced, ext, cyc_h).map(|m| m == *phi);
    out.push(timed(&format!("{prefix}.oxidize_reduce"), t, back, "oxidize(reduce(phi)) = phi", "oxidize(reduce(phi)) differs"));
    let t = Instant::now();
    let again = oxidize(&reduced, ext, cyc_h).and_then(|m| reduce(&m, ext, cyc_h)).map(|r| r == reduced);
    out.push(timed(&format!("{prefix}.reduce_oxidize"), t, again, "reduce(oxidize(psi)) = psi", "reduce(oxidize(psi)) differs"));
    let t = Instant::now();
    let unit = (|| {
        let unit = adjunction_unit(ext, cyc_ext)?;
        if unit.validate().is_err() {
            return Ok(false);
        }
        let lifted = cyclify_morphism(phi, cyc_h, cyc_ext)?;
        Ok(DgaMorphism::compose(&unit, &lifted)?.images == reduced.morphism.images)
    })();
    // the uncurved bijection needs h without degree-1 generators; the curved one is used either way
    let deg1 = |a: &FreeDga| a.generators().iter().filter(|g| g.bidegree.n == 1).count();
    let ok = format!(
        "reduce(phi) = unit o L(phi)/R, curved unit valid; {} has {} degree-1 generators, {} has {}",
        cyc_h.base.label(),
        deg1(&cyc_h.base),
        ext.result.label(),
        deg1(&ext.result)
    );
    out.push(timed(&format!("{prefix}.unit"), t, unit, &ok, "unit composite differs from reduce"));
    out
}

/// `reduce(φ∘g) = reduce(φ)∘𝔏(g)/ℝ` for `g: CE(h₁) → CE(h₂)`, `φ: CE(h₂) → CE(ĝ)`.
pub fn verify_naturality_square(
    id: &str,
    g: &DgaMorphism,
    phi: &DgaMorphism,
    ext: &ExtensionStep,
    cyc1: &CyclifiedAlgebra,
    cyc2: &CyclifiedAlgebra,
) -> ReportEntry {
    let t = Instant::now();
    let r = (|| {
        let left = reduce(&DgaMorphism::compose(phi, g)?, ext, cyc1)?;
        let right = DgaMorphism::compose(&reduce(phi, ext, cyc2)?.morphism, &cyclify_morphism(g, cyc1, cyc2)?)?;
        Ok(left.morphism.images == right.images)
    })();
    timed(id, t, r, "both paths around the naturality square agree", "naturality square does not commute")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brane_cocycles::{l_s4, twisted_ku, CoefficientWindow};

    #[test]
    fn loop_of_ls4() {
        let h = Arc::new(l_s4());
        let c = cyclify(&h).unwrap();
        let l = &c.loops;
        assert_eq!(l.render(l.differential(l.try_id("s_g7").unwrap())), "g4*s_g4");
        assert_eq!(l.render(l.differential(l.try_id("s_g4").unwrap())), "0");
        let r = &c.result;
        assert_eq!(r.render(r.differential(r.try_id("g4").unwrap())), "s_g4*omega2");
        assert!(cyclify_morphism(&DgaMorphism::identity(h.clone()), &c, &c).unwrap().is_identity());
        assert!(fiber_sequence_check("t", &c).is_pass());
    }

    #[test]
    fn functorial_on_windows() {
        let small = Arc::new(twisted_ku(CoefficientWindow { min: 0, max: 6 }).unwrap());
        let mid = Arc::new(twisted_ku(CoefficientWindow { min: 0, max: 8 }).unwrap());
        let big = Arc::new(twisted_ku(CoefficientWindow::KU).unwrap());
        let f = DgaMorphism::by_name(small.clone(), mid.clone(), vec![]).unwrap();
        let g = DgaMorphism::by_name(mid.clone(), big.clone(), vec![]).unwrap();
        let (cs, cm, cb) = (cyclify(&small).unwrap(), cyclify(&mid).unwrap(), cyclify(&big).unwrap());
        let lhs = cyclify_morphism(&DgaMorphism::compose(&g, &f).unwrap(), &cs, &cb).unwrap();
        let rhs = DgaMorphism::compose(&cyclify_morphism(&g, &cm, &cb).unwrap(), &cyclify_morphism(&f, &cs, &cm).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(lhs.is_valid());
    }

    #[test]
    fn zero_degree_generator_rejected() {
        let t = GeneratorTable::new(&[("x", Bidegree::even(0))]).unwrap();
        let h = FreeDga::declare("x", t, vec![Element::zero()]).unwrap();
        assert!(matches!(free_loop(&h), Err(Error::IllegalShift(_))));
    }
}
