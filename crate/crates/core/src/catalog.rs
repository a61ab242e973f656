//! Built-in algebras and cocycle families by name, for `dump` and the round-trip tests.

use std::sync::Arc;

use crate::algebra::FreeDga;
use crate::brane_cocycles::{l_s4, t_duality_coefficients, twisted_ku, twisted_ku_shifted, CocycleFamily, CoefficientWindow, Families};
use crate::cyclification::cyclify;
use crate::error::{Error, Result};
use crate::fda::{fda_name, FdaDocument};
use crate::superspace::{ExtensionStep, Spacetimes};
use crate::tduality::{build_correspondence, f_theory_algebra, ku_display, tfold_algebra, TFoldVariant};

pub const ALGEBRAS: &[&str] = &[
    "mink9", "iia10", "iib10", "m11", "ext_iia", "ext_iib", "ext_m", "doubled", "lS4", "bT1", "ku", "sku", "cycKU", "cycSKU", "stringIIA", "stringIIB",
    "gerbeA", "gerbeB", "tfoldA", "tfoldB", "ftheory", "m2brane",
];

pub const FAMILIES: &[&str] = &["mbranes", "iia", "iib"];

/// A built-in algebra, or `cyc(NAME)` for the cyclification of one.
pub fn algebra(name: &str) -> Result<Arc<FreeDga>> {
    if let Some(inner) = name.strip_prefix("cyc(").and_then(|r| r.strip_suffix(')')) {
        return Ok(cyclify(&algebra(inner)?)?.result);
    }
    let s = Spacetimes::shared();
    let corr = || build_correspondence(s, Families::shared());
    let a = match name {
        "mink9" => s.mink9.clone(),
        "iia10" => s.iia10.clone(),
        "iib10" => s.iib10.clone(),
        "m11" => s.m11.clone(),
        "ext_iia" => s.ext_iia.result.clone(),
        "ext_iib" => s.ext_iib.result.clone(),
        "ext_m" => s.ext_m.result.clone(),
        "doubled" => s.doubled.doubled.clone(),
        "lS4" => Arc::new(l_s4()),
        "bT1" => Arc::new(t_duality_coefficients()),
        "ku" => Arc::new(twisted_ku(CoefficientWindow::KU)?),
        "sku" => Arc::new(twisted_ku_shifted(CoefficientWindow::SIGMA_KU)?),
        "cycKU" => Arc::new(ku_display(false, -1, 10)?),
        "cycSKU" => Arc::new(ku_display(true, 0, 9)?),
        "stringIIA" => corr()?.string_iia,
        "stringIIB" => corr()?.string_iib,
        "gerbeA" => corr()?.gerbe_a,
        "gerbeB" => corr()?.gerbe_b,
        "tfoldA" => tfold_algebra(TFoldVariant::A, s, Families::shared())?.result,
        "tfoldB" => tfold_algebra(TFoldVariant::B, s, Families::shared())?.result,
        "ftheory" => f_theory_algebra(s)?.result,
        "m2brane" => ExtensionStep::new(s.m11.clone(), Families::shared().mbranes.element("M2").clone(), "b3", "m2brane")?.result,
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(a)
}

pub fn family(name: &str) -> Result<&'static CocycleFamily> {
    let f = Families::shared();
    match name {
        "mbranes" => Ok(&f.mbranes),
        "iia" => Ok(&f.iia),
        "iib" => Ok(&f.iib),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

pub fn algebra_document(name: &str) -> Result<FdaDocument> {
    let mut doc = FdaDocument::default();
    doc.push_algebra(&fda_name(name), algebra(name)?);
    Ok(doc)
}

/// Coefficients, spacetime, each cocycle (as `cocycle` when d-closed, else `element`), and the
/// classifying morphism.
pub fn family_document(name: &str) -> Result<FdaDocument> {
    let fam = family(name)?;
    let (cn, sn) = (fda_name(fam.coefficients.label()), fda_name(fam.spacetime.label()));
    let mut doc = FdaDocument::default();
    doc.push_algebra(&cn, fam.coefficients.clone());
    doc.push_algebra(&sn, fam.spacetime.clone());
    for (n, x) in &fam.elements {
        doc.push_element(&format!("mu_{n}"), &sn, x.clone(), fam.spacetime.is_closed(x));
    }
    doc.push_morphism(&fda_name(&fam.label), &cn, &sn, fam.morphism.clone());
    Ok(doc)
}
