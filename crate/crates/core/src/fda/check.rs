use std::time::Instant;

use super::{Block, FdaDocument};
use crate::report::ReportEntry;

/// d² = 0 for every algebra, closure for every declared cocycle, validity for every
/// morphism. `selector` is `all` or an id prefix such as `fda.cocycle.`.
pub fn check_document(doc: &FdaDocument, selector: &str) -> Vec<ReportEntry> {
    let wanted = |id: &str| selector == "all" || id.starts_with(selector);
    let mut out = Vec::new();
    for (block, pos) in &doc.blocks {
        let start = Instant::now();
        let mut e = match block {
            Block::Algebra { name, algebra } => {
                let id = format!("fda.algebra.{name}");
                if !wanted(&id) {
                    continue;
                }
                match algebra.check_d_squared() {
                    Ok(()) => ReportEntry::pass(&id, format!("d^2 = 0 on {} generators", algebra.len())),
                    Err(err) => ReportEntry::fail(&id, format!("line {}: {err}", pos.line), Some(err.to_string())),
                }
            }
            Block::Element { name, algebra, value, cocycle } => {
                let id = format!("fda.{}.{name}", if *cocycle { "cocycle" } else { "element" });
                if !wanted(&id) {
                    continue;
                }
                let a = doc.algebra(algebra).expect("parser resolved the algebra");
                let dx = a.d(value);
                match (cocycle, dx.is_zero()) {
                    (true, true) => ReportEntry::pass(&id, format!("closed in {algebra} ({} terms)", value.len())),
                    (true, false) => ReportEntry::fail(&id, format!("line {}: d{name} has {} terms", pos.line, dx.len()), Some(a.render_truncated(&dx, 16))),
                    (false, closed) => ReportEntry::pass(&id, format!("{} terms in {algebra}, {}", value.len(), if closed { "closed" } else { "not closed" })),
                }
            }
            Block::Morphism { name, morphism, .. } => {
                let id = format!("fda.morphism.{name}");
                if !wanted(&id) {
                    continue;
                }
                match morphism.validate() {
                    Ok(()) => ReportEntry::pass(&id, format!("{} -> {} valid", morphism.source.label(), morphism.target.label())),
                    Err(d) => ReportEntry::fail(
                        &id,
                        format!("line {}: generator {} {}", pos.line, d.generator, d.reason),
                        Some(morphism.target.render_truncated(&d.difference, 16)),
                    ),
                }
            }
        };
        e.millis = start.elapsed().as_millis() as u64;
        out.push(e);
    }
    out
}
