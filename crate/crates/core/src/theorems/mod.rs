//! Checkable propositions: Desargues' theorem and its converse, the
//! involution cut on a line by a pencil of conics, tangent alignment for two
//! conics with common tangents, and the completion of a section of a folded
//! sheet drawn in projection.

mod desargues;
mod example1;
mod section;

pub use desargues::{
    check_desargues, check_desargues_converse, check_desargues_involution, DesarguesVerdict,
};
pub use example1::{check_example1, check_example1_with, AlignmentReport, Pairing};
pub use section::{
    check_section_alignment, complete_section, verify_section_against_lift, SectionAlignment,
    SectionQuadruplet,
};

use crate::kernel::{Field, Tolerance};
use crate::p2::{incident, join, PointP2};

/// Line through the first two distinct points, and whether every point lies
/// on it. `None` when all points coincide.
pub(crate) fn fit_line<S: Field>(
    pts: &[PointP2<S>],
    tol: &Tolerance,
) -> (Option<crate::p2::LineP2<S>>, bool) {
    let Some(first) = pts.first() else {
        return (None, true);
    };
    let line = pts.iter().skip(1).find_map(|p| {
        if p.approx_eq(first, tol) {
            None
        } else {
            join(first, p).ok()
        }
    });
    match line {
        None => (None, true),
        Some(l) => {
            let all = pts.iter().all(|p| incident(p, &l, tol));
            (Some(l), all)
        }
    }
}
