//! Per-instance checks of the stabilizer equality and the root inequality,
//! and the exhaustive sweeps over all full-support minuscule elements.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{
    all_peak_orders, construction_one, fiber_profile, ordering_label, Fiber, GenDecomposition,
    PeakOrdering, Quiver,
};
use crate::rootsys::{root_leq, Family, Root, RootSystem, SystemType};
use crate::theorems::subgroup::{simple_generation, stabilizer_weyl_of_point, ReflectionSubgroup};
use crate::weyl::{CosetContext, WeylElement, Word};

/// The two point stabilizers attached to the first factor `w_1`:
/// `at_w1x1` fixes `w_1 W_{I^{w_1} ∩ Supp(w_1)}` and `at_wx` fixes `w W_I`,
/// both inside `W_{Supp(w_1)}`.
pub fn point_stabilizers(
    ctx: &CosetContext,
    d: &GenDecomposition,
) -> (ReflectionSubgroup, ReflectionSubgroup) {
    let sys = &ctx.sys;
    let w1 = &d.factors[0];
    let support = d.factor_supports()[0];
    let at_w1x1 = stabilizer_weyl_of_point(
        sys,
        support,
        w1,
        w1.upper_index_set().intersection(&support),
    );
    let at_wx = stabilizer_weyl_of_point(sys, support, &d.element, ctx.parabolic_nodes());
    (at_w1x1, at_wx)
}

#[derive(Debug, Clone, Serialize)]
pub struct WeylEqualityReport {
    pub equal: bool,
    pub wx_subset_w1x1: bool,
    pub closed: bool,
    pub simple_generated: bool,
    /// reflections of the group not generated by its simple reflections
    pub missing: Vec<Root>,
    pub at_w1x1: ReflectionSubgroup,
    pub at_wx: ReflectionSubgroup,
}

/// Compares the two stabilizers without any hypothesis on the decomposition.
pub fn weyl_equality_unchecked(
    ctx: &CosetContext,
    d: &GenDecomposition,
) -> Result<WeylEqualityReport> {
    let sys = &ctx.sys;
    let (at_w1x1, at_wx) = point_stabilizers(ctx, d);
    let equal = at_w1x1 == at_wx;
    let gen = simple_generation(sys, &at_w1x1)?;
    Ok(WeylEqualityReport {
        equal,
        wx_subset_w1x1: at_wx.is_subset(&at_w1x1),
        closed: at_w1x1.is_closed(sys) && at_wx.is_closed(sys),
        simple_generated: gen.generated,
        missing: gen.missing,
        at_w1x1,
        at_wx,
    })
}

fn require_smooth_for_e(sys: &RootSystem, d: &GenDecomposition) -> Result<()> {
    if sys.system_type().family() == Family::E && !d.smooth {
        return Err(Error::PreconditionViolated(format!(
            "decomposition of {} is not smooth",
            d.source_word
        )));
    }
    Ok(())
}

/// Stabilizer equality for a decomposition from [`construction_one`]. In the
/// exceptional types the decomposition must be smooth.
pub fn verify_weyl_equality(
    ctx: &CosetContext,
    d: &GenDecomposition,
) -> Result<WeylEqualityReport> {
    require_smooth_for_e(&ctx.sys, d)?;
    weyl_equality_unchecked(ctx, d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootInequalityReport {
    pub alpha: usize,
    pub w1_inv_alpha: Root,
    pub w_inv_alpha: Root,
    /// `w^{-1}(α) ≤ w_1^{-1}(α)` coordinatewise
    pub holds: bool,
    /// the two vectors agree exactly when there is one factor
    pub equality_iff_m1: bool,
}

fn unique_descent(w1: &WeylElement) -> Result<usize> {
    let descents = w1.left_descents().to_vec();
    match descents.as_slice() {
        [a] => Ok(*a),
        _ => Err(Error::NonUniqueDescent(descents)),
    }
}

pub fn root_inequality_unchecked(d: &GenDecomposition) -> Result<RootInequalityReport> {
    let w1 = &d.factors[0];
    let alpha = unique_descent(w1)?;
    let w1_inv_alpha = w1.inverse_image_of_simple(alpha);
    let w_inv_alpha = d.element.inverse_image_of_simple(alpha);
    let leq = root_leq(w_inv_alpha.coeffs(), w1_inv_alpha.coeffs());
    let equal = w1_inv_alpha == w_inv_alpha;
    Ok(RootInequalityReport {
        alpha,
        holds: leq,
        equality_iff_m1: equal == (d.m() == 1),
        w1_inv_alpha,
        w_inv_alpha,
    })
}

pub fn root_inequality_check(
    ctx: &CosetContext,
    d: &GenDecomposition,
) -> Result<RootInequalityReport> {
    require_smooth_for_e(&ctx.sys, d)?;
    root_inequality_unchecked(d)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct InstanceKey {
    #[serde(rename = "type")]
    pub family: String,
    pub rank: usize,
    pub node: usize,
    pub word: String,
    /// positions in the increasing-vertex peak list, e.g. `"2,1"`
    pub ordering: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub instance: InstanceKey,
    pub m: usize,
    pub factors: Vec<String>,
    pub weyl_equality: bool,
    pub wx_subset_w1x1: bool,
    pub closed: bool,
    pub simple_generated: bool,
    pub missing_reflections: Vec<Root>,
    pub root_inequality: RootInequalityReport,
    pub smooth: bool,
    pub fibers: Vec<Fiber>,
}

fn family_letter(t: SystemType) -> &'static str {
    match t.family() {
        Family::A => "A",
        Family::D => "D",
        Family::E => "E",
    }
}

/// Runs every check on one decomposition; hypotheses are not enforced here,
/// the caller filters on `smooth` where needed.
pub fn analyze(ctx: &CosetContext, q: &Quiver, d: &GenDecomposition) -> Result<InstanceReport> {
    let t = ctx.sys.system_type();
    let eq = weyl_equality_unchecked(ctx, d)?;
    let ineq = root_inequality_unchecked(d)?;
    let label = ordering_label(q, &d.peak_order)
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",");
    Ok(InstanceReport {
        instance: InstanceKey {
            family: family_letter(t).into(),
            rank: t.rank(),
            node: ctx.excluded_node,
            word: d.source_word.to_string(),
            ordering: label,
        },
        m: d.m(),
        factors: d.factor_words.iter().map(Word::to_string).collect(),
        weyl_equality: eq.equal,
        wx_subset_w1x1: eq.wx_subset_w1x1,
        closed: eq.closed,
        simple_generated: eq.simple_generated,
        missing_reflections: eq.missing,
        root_inequality: ineq,
        smooth: d.smooth,
        fibers: fiber_profile(&ctx.sys, d)?,
    })
}

/// Full-support elements of `W^I` with their standard words, sorted by
/// `(length, word)`.
pub fn full_support_elements(ctx: &CosetContext) -> Result<Vec<(WeylElement, Word)>> {
    let all = ctx.sys.all_nodes();
    let mut out = ctx
        .enumerate_minuscule()
        .into_iter()
        .filter(|m| m.element.support(&ctx.sys) == all)
        .map(|m| {
            let word = ctx.standard_word(&m.element)?;
            Ok((m.element, word))
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| (a.1.len(), a.1.letters()).cmp(&(b.1.len(), b.1.letters())));
    Ok(out)
}

/// Which peak orderings a sweep visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderingSelection {
    Standard,
    All,
}

/// Decompositions of one element under the selected orderings.
pub fn decompositions(
    sys: &RootSystem,
    word: &Word,
    selection: &OrderingSelection,
) -> Result<(Quiver, Vec<GenDecomposition>)> {
    let q = Quiver::build(sys, word)?;
    let orders = match selection {
        OrderingSelection::Standard => vec![PeakOrdering::Standard.resolve(&q)?],
        OrderingSelection::All => all_peak_orders(&q),
    };
    let decomps = orders
        .iter()
        .map(|o| construction_one(sys, &q, o))
        .collect::<Result<Vec<_>>>()?;
    Ok((q, decomps))
}

/// Every instance report for one `(system, node)`, in deterministic order.
pub fn sweep(ctx: &CosetContext, selection: &OrderingSelection) -> Result<Vec<InstanceReport>> {
    let elements = full_support_elements(ctx)?;
    let nested = elements
        .par_iter()
        .map(|(_, word)| {
            let (q, decomps) = decompositions(&ctx.sys, word, selection)?;
            decomps
                .iter()
                .map(|d| analyze(ctx, &q, d))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(nested.into_iter().flatten().collect())
}

/// The `D_8` element at node 8 whose first standard factor is
/// `(s4 s5 s6 s8)(s3 s4 s5 s6 s7)`: the stabilizer equality holds but the
/// group contains `s_β`, `β = α4+α5+α6+α7`, which is not a product of the
/// simple reflections it contains.
pub const D8_NON_SIMPLE_WORD: &str = "4 5 6 8 3 4 5 6 7 1 2 3 4 5 6 8";

/// Report for [`D8_NON_SIMPLE_WORD`] under the standard ordering.
pub fn d8_non_simple_instance() -> Result<(InstanceReport, WeylEqualityReport)> {
    let ctx = context(SystemType::d(8)?, 8)?;
    let word: Word = D8_NON_SIMPLE_WORD.parse()?;
    ctx.minuscule_from_word(&word)?;
    let (q, decomps) = decompositions(&ctx.sys, &word, &OrderingSelection::Standard)?;
    let report = analyze(&ctx, &q, &decomps[0])?;
    let eq = verify_weyl_equality(&ctx, &decomps[0])?;
    Ok((report, eq))
}

pub fn context(t: SystemType, node: usize) -> Result<CosetContext> {
    CosetContext::new(Arc::new(RootSystem::new(t)?), node)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decomp(t: &str, node: usize, word: &str, order: &str) -> (CosetContext, GenDecomposition) {
        let ctx = context(t.parse().unwrap(), node).unwrap();
        let q = Quiver::build(&ctx.sys, &word.parse().unwrap()).unwrap();
        let o = order.parse::<PeakOrdering>().unwrap().resolve(&q).unwrap();
        let d = construction_one(&ctx.sys, &q, &o).unwrap();
        (ctx, d)
    }

    #[test]
    fn d_node_one_chain() {
        // w = s5 s4 s3 s2 s1 in D5 peels off w_1 = s5
        let (ctx, d) = decomp("D5", 1, "5 4 3 2 1", "standard");
        assert_eq!(d.factor_words[0].to_string(), "5");
        let r = root_inequality_check(&ctx, &d).unwrap();
        assert_eq!(r.alpha, 5);
        assert_eq!(r.w1_inv_alpha, Root::new(vec![0, 0, 0, 0, -1]));
        assert_eq!(r.w_inv_alpha, Root::new(vec![-1, -1, -1, 0, -1]));
        assert!(r.holds && r.equality_iff_m1);
    }

    #[test]
    fn d8_instance() {
        let (rep, eq) = d8_non_simple_instance().unwrap();
        assert_eq!(rep.factors[0], "4 5 6 8 3 4 5 6 7");
        assert!(rep.weyl_equality && !rep.simple_generated);
        assert!(eq
            .at_w1x1
            .contains(&Root::new(vec![0, 0, 0, 1, 1, 1, 1, 0])));
        assert!(eq
            .missing
            .contains(&Root::new(vec![0, 0, 0, 1, 1, 1, 1, 0])));
    }

    #[test]
    fn e_requires_smoothness() {
        let (ctx, d) = decomp("E6", 1, "1 3 5 4 6 5 2 4 3 1", "standard");
        assert!(!d.smooth);
        assert!(matches!(
            verify_weyl_equality(&ctx, &d),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            root_inequality_check(&ctx, &d),
            Err(Error::PreconditionViolated(_))
        ));
        let (ctx, d) = decomp("E6", 1, "1 3 5 4 6 5 2 4 3 1", "2,1");
        assert!(d.smooth);
        let rep = verify_weyl_equality(&ctx, &d).unwrap();
        assert!(rep.equal && rep.simple_generated);
    }

    #[test]
    fn e6_smooth_both_orderings() {
        for order in ["1,2", "2,1"] {
            let (ctx, d) = decomp("E6", 1, "1 3 4 6 5 2 4 3 1", order);
            assert!(d.smooth);
            let rep = verify_weyl_equality(&ctx, &d).unwrap();
            assert!(rep.equal && rep.simple_generated, "ordering {order}");
        }
    }
}
