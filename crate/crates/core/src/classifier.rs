//! The decision procedure for toupie algebras and the engine checks that back
//! each outcome.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::algebra::AlgebraError;
use crate::field::{format_scalar, scalar, FieldSpec, Rationals, Scalar};
use crate::ideal::{close_ideal, IdealClosure, IdealError};
use crate::minimal::minimal_relations;
use crate::rep::{
    decompose, is_indecomposable, iso, random_representation, Indecomposability, RepEngine,
};
use crate::subspace::Subspace;
use crate::toupie::{ToupiePresentation, ToupieRelation, ToupieVertex};
use crate::witness::{
    build_infinite_family, build_interval, tilted_tau_target, valid_d_xy, BranchShape, Witness,
    WitnessSpec, SAMPLE_LAMBDAS,
};

/// Random modules drawn per verification of an `m = 0` algebra.
pub const RANDOM_SAMPLES: usize = 20;
const RANDOM_MAX_DIM: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassLabel {
    Hereditary,
    TiltedNotHereditary,
    QuasitiltedNotTilted,
    WeaklyShodNotQuasitilted,
    LauraNotWeaklyShod,
    NotLaura,
    /// A single branch: always weakly shod, tilted exactly when quasitilted.
    LinearCase {
        tilted: bool,
    },
}

impl ClassLabel {
    pub fn slug(&self) -> &'static str {
        match self {
            ClassLabel::Hereditary => "hereditary",
            ClassLabel::TiltedNotHereditary => "tilted-not-hereditary",
            ClassLabel::QuasitiltedNotTilted => "quasitilted-not-tilted",
            ClassLabel::WeaklyShodNotQuasitilted => "weakly-shod-not-quasitilted",
            ClassLabel::LauraNotWeaklyShod => "laura-not-weakly-shod",
            ClassLabel::NotLaura => "not-laura",
            ClassLabel::LinearCase { tilted: true } => "linear-tilted",
            ClassLabel::LinearCase { tilted: false } => "linear-not-tilted",
        }
    }

    /// Position in `hereditary < tilted < quasitilted < weakly shod < laura <
    /// not laura`. A linear algebra ranks as tilted or weakly shod; use
    /// [`Evidence::rank`] to place a linear hereditary algebra at 0.
    pub fn rank(&self) -> u8 {
        match self {
            ClassLabel::Hereditary => 0,
            ClassLabel::TiltedNotHereditary => 1,
            ClassLabel::QuasitiltedNotTilted => 2,
            ClassLabel::WeaklyShodNotQuasitilted => 3,
            ClassLabel::LauraNotWeaklyShod => 4,
            ClassLabel::NotLaura => 5,
            ClassLabel::LinearCase { tilted: true } => 1,
            ClassLabel::LinearCase { tilted: false } => 3,
        }
    }
}

/// Which leaf of the decision tree fired.
pub mod cases {
    pub const LINEAR: &str = "LinearCase";
    pub const H: &str = "MainTheorem(H)";
    pub const T_I: &str = "MainTheorem(T)(i)";
    pub const T_II: &str = "MainTheorem(T)(ii)";
    pub const T_III: &str = "MainTheorem(T)(iii)";
    pub const QT: &str = "MainTheorem(QT)";
    pub const WS: &str = "MainTheorem(WS)";
    pub const L: &str = "MainTheorem(L)";
    pub const NL_NOT_CANONICAL: &str = "NotLaura(m=2,not-canonical)";
    pub const NL_MANY_BRANCHES: &str = "NotLaura(t>m+1)";
    pub const NL_TWO_LONG: &str = "NotLaura(two-long-branches)";
    pub const NL_NO_BRANCH: &str = "NotLaura(no-branch-in-ideal)";
    pub const NL_TWO_IN_IDEAL: &str = "NotLaura(m=1,several-branches-in-ideal)";
    pub const NL_BRANCH_M2: &str = "NotLaura(m>=2,branch-in-ideal)";

    pub const ALL: [&str; 14] = [
        LINEAR,
        H,
        T_I,
        T_II,
        T_III,
        QT,
        WS,
        L,
        NL_NOT_CANONICAL,
        NL_MANY_BRANCHES,
        NL_TWO_LONG,
        NL_NO_BRANCH,
        NL_TWO_IN_IDEAL,
        NL_BRANCH_M2,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evidence {
    pub t: usize,
    pub m: usize,
    pub lengths: Vec<usize>,
    pub simply_connected: bool,
    /// 0-based pairs `(i, j)`, `i < j`.
    pub linkage_edges: Vec<(usize, usize)>,
    pub branches_in_i: Vec<usize>,
    pub relations_per_branch: Vec<usize>,
    pub canonical: Option<Vec<Scalar>>,
    pub long_branch_count: usize,
    pub fired_case: &'static str,
    pub warnings: Vec<String>,
    pub witnesses: Vec<WitnessSpec>,
}

impl Evidence {
    /// Hierarchy rank, with every algebra whose ideal is zero at 0.
    pub fn rank(&self, label: ClassLabel) -> u8 {
        if self.m == self.t && self.relations_per_branch.iter().all(|&n| n == 0) {
            0
        } else {
            label.rank()
        }
    }
}

/// Shape of `branch` with its inclusion-minimal zero subpaths.
fn branch_shape<F: crate::field::Field>(c: &IdealClosure<F>, branch: usize) -> BranchShape {
    BranchShape {
        length: c.lengths[branch],
        monomials: c.minimal_zero_subpaths(branch),
    }
}

/// The branch seen from the vertex before the first `p` with `0 ⇝ p` zero:
/// `0 -> (p-1) -> p -> ... -> inf`, carrying `(0, 2)` and the zero subpaths
/// that start at `p - 1` or later.
fn cut_shape<F: crate::field::Field>(c: &IdealClosure<F>, branch: usize) -> BranchShape {
    let l = c.lengths[branch];
    let mins = c.minimal_zero_subpaths(branch);
    let p = (1..=l)
        .find(|&b| c.is_zero_subpath(branch, 0, b))
        .unwrap_or(l);
    let mut monomials = vec![(0, 2)];
    for (a, b) in mins {
        if a + 1 >= p {
            monomials.push((a + 2 - p, b + 2 - p));
        }
    }
    BranchShape {
        length: l + 2 - p,
        monomials,
    }
}

fn lambdas() -> impl Iterator<Item = Scalar> {
    SAMPLE_LAMBDAS.iter().map(|&l| scalar(l))
}

/// `(r, s)` for the first linkage class `[w_i]` with `1 < r < t`.
fn class_parameters(c: &IdealClosure<Rationals>, classes: &[Vec<usize>]) -> Option<(usize, usize)> {
    let t = c.t();
    let class = classes.iter().find(|k| k.len() > 1 && k.len() < t)?;
    let unit = |i: usize| {
        let mut e = vec![scalar(0); t];
        e[i] = scalar(1);
        e
    };
    let coords = Subspace::span(
        Rationals,
        t,
        &class.iter().map(|&i| unit(i)).collect::<Vec<_>>(),
    )
    .ok()?;
    let d = c.w.intersect(&coords).ok()?.dim();
    let r = class.len();
    let s = (c.m + d).checked_sub(r)?;
    Some((r, s))
}

/// Interval modules on a single branch with both dimensions at least 2.
/// Every indecomposable over a linear bound quiver is an interval, so an
/// empty result together with global dimension at most 2 means quasitilted.
pub fn linear_obstructions(shape: &BranchShape) -> (Vec<Witness>, usize) {
    let mut found = Vec::new();
    let mut gl = 0;
    for a in 0..=shape.length {
        for b in a..=shape.length {
            let Ok(w) = build_interval(shape.clone(), a, b) else {
                continue;
            };
            let e = RepEngine::from_toupie(&w.presentation).expect("linear algebra");
            let (pd, id) = (e.pd(&w.module), e.id(&w.module));
            if a == b {
                gl = gl.max(pd);
            }
            if pd >= 2 && id >= 2 {
                found.push(w);
            }
        }
    }
    (found, gl)
}

pub fn classify(p: &ToupiePresentation) -> Result<(ClassLabel, Evidence), IdealError> {
    let c = close_ideal(p)?;
    let t = c.t();
    let cat = minimal_relations(&c)?;
    let relations_per_branch = c.relation_counts();
    let mut ev = Evidence {
        t,
        m: c.m,
        lengths: c.lengths.clone(),
        simply_connected: cat.is_simply_connected(),
        linkage_edges: cat.linkage_edges.clone(),
        branches_in_i: c.branches_in_i.clone(),
        relations_per_branch: relations_per_branch.clone(),
        canonical: c.canonical_lambdas(),
        long_branch_count: p.quiver.long_branch_count(),
        fired_case: cases::H,
        warnings: Vec::new(),
        witnesses: Vec::new(),
    };
    let m = c.m;
    let label = if t == 1 {
        ev.fired_case = cases::LINEAR;
        ClassLabel::LinearCase {
            tilted: relations_per_branch[0] <= 1,
        }
    } else if m == t {
        ev.fired_case = cases::H;
        ClassLabel::Hereditary
    } else if ev.simply_connected {
        match m {
            1 => {
                ev.fired_case = cases::T_I;
                ev.witnesses.push(WitnessSpec::RadP0);
                ClassLabel::TiltedNotHereditary
            }
            2 => {
                if ev.canonical.is_some() {
                    ev.fired_case = cases::QT;
                    if t == m + 1 && ev.long_branch_count <= 1 {
                        ev.warnings.push(String::from(
                            "(T)(ii) also matches: m = t-1 with at most one branch of length at least 3",
                        ));
                    }
                    ClassLabel::QuasitiltedNotTilted
                } else {
                    ev.fired_case = cases::NL_NOT_CANONICAL;
                    for lambda in lambdas() {
                        ev.witnesses.push(WitnessSpec::NoBranchInIdeal {
                            r: 2,
                            s: 1,
                            m: 2,
                            lambda,
                        });
                    }
                    ClassLabel::NotLaura
                }
            }
            _ => {
                ev.witnesses.push(WitnessSpec::RadP0);
                if t == m + 1 && ev.long_branch_count <= 1 {
                    ev.fired_case = cases::T_II;
                    ClassLabel::TiltedNotHereditary
                } else {
                    ev.fired_case = if t > m + 1 {
                        cases::NL_MANY_BRANCHES
                    } else {
                        cases::NL_TWO_LONG
                    };
                    let rows = c.w.basis();
                    match build_infinite_family(rows.clone(), scalar(1)) {
                        Ok(_) => {
                            for lambda in lambdas() {
                                ev.witnesses.push(WitnessSpec::InfiniteFamily {
                                    relations: rows.clone(),
                                    lambda,
                                });
                            }
                        }
                        Err(e) => ev
                            .warnings
                            .push(format!("infinite family not constructible: {e}")),
                    }
                    ClassLabel::NotLaura
                }
            }
        }
    } else if m == 0 {
        if relations_per_branch.iter().all(|&n| n == 1) {
            ev.fired_case = cases::T_III;
            ClassLabel::TiltedNotHereditary
        } else {
            ev.fired_case = cases::WS;
            if let Some(b) = (0..t).find(|&b| relations_per_branch[b] > 1) {
                let (found, _) = linear_obstructions(&branch_shape(&c, b));
                match found.into_iter().next() {
                    Some(w) => ev.witnesses.push(w.spec),
                    None => ev
                        .warnings
                        .push(format!("no interval obstruction on branch {}", b + 1)),
                }
            }
            ClassLabel::WeaklyShodNotQuasitilted
        }
    } else if c.branches_in_i.is_empty() {
        ev.fired_case = cases::NL_NO_BRANCH;
        let classes: Vec<Vec<usize>> = (0..t).map(|i| cat.class_of(i)).collect();
        match class_parameters(&c, &classes) {
            Some((r, s)) => {
                for lambda in lambdas() {
                    ev.witnesses
                        .push(WitnessSpec::NoBranchInIdeal { r, s, m, lambda });
                }
            }
            None => ev
                .warnings
                .push(String::from("no linkage class with 1 < r < t")),
        }
        ClassLabel::NotLaura
    } else if m == 1 && c.branches_in_i.len() == 1 {
        ev.fired_case = cases::L;
        let w1 = c.branches_in_i[0];
        ev.witnesses.push(WitnessSpec::BranchInIdealM1 {
            branch: branch_shape(&c, w1),
        });
        if let Ok(ds) = valid_d_xy(p) {
            for (x, y, _) in ds.into_iter().take(3) {
                ev.witnesses.push(WitnessSpec::Dxy { x, y });
            }
        }
        ClassLabel::LauraNotWeaklyShod
    } else if m == 1 {
        ev.fired_case = cases::NL_TWO_IN_IDEAL;
        let (a, b) = (c.branches_in_i[0], c.branches_in_i[1]);
        for lambda in lambdas() {
            ev.witnesses.push(WitnessSpec::TwoBranchesInIdeal {
                first: cut_shape(&c, a),
                second: cut_shape(&c, b),
                lambda,
            });
        }
        ClassLabel::NotLaura
    } else {
        ev.fired_case = cases::NL_BRANCH_M2;
        let w1 = c.branches_in_i[0];
        for lambda in lambdas() {
            ev.witnesses.push(WitnessSpec::BranchInIdealM2 {
                branch: branch_shape(&c, w1),
                m,
                lambda,
            });
        }
        ClassLabel::NotLaura
    };
    Ok((label, ev))
}

/// One verified property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub subject: String,
    pub property: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(
        &mut self,
        subject: &str,
        property: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) {
        self.checks.push(Check {
            subject: String::from(subject),
            property: property.into(),
            passed,
            detail: detail.into(),
        });
    }
}

fn describe(spec: &WitnessSpec) -> String {
    let mut s = String::from(spec.tag());
    let mut parts: Vec<String> = spec
        .params()
        .into_iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    if let Some(l) = spec.lambda() {
        parts.push(format!("lambda={}", format_scalar(l)));
    }
    if !parts.is_empty() {
        s.push('[');
        s.push_str(&parts.join(" "));
        s.push(']');
    }
    s
}

/// Relations, contract and indecomposability of one witness.
fn check_witness(report: &mut VerificationReport, w: &Witness) {
    let name = describe(&w.spec);
    let g = w.presentation.to_general();
    let holds = w.module.check(&g).unwrap_or(false);
    report.push(
        &name,
        "relations",
        holds,
        format!("dims {:?}", w.module.dims),
    );
    if !holds {
        return;
    }
    let e = RepEngine::from_toupie(&w.presentation).expect("witness quiver");
    let c = &w.contract;
    if c.pd != crate::witness::Bound::Unspecified || c.last_sink_rank.is_some() {
        let terms = e.resolution_terms(&w.module);
        let pd = terms.len().saturating_sub(1);
        report.push(
            &name,
            format!("pd {:?}", c.pd),
            c.pd.admits(pd),
            format!("pd = {pd}, resolution {terms:?}"),
        );
        if let Some(k) = c.last_sink_rank {
            let sink = e.vertex_count() - 1;
            let got = terms
                .last()
                .map_or(0, |v| v.iter().filter(|&&x| x == sink).count());
            report.push(
                &name,
                format!("last term P_inf^{k}"),
                got == k,
                format!("P_inf multiplicity {got}"),
            );
        }
    }
    if c.id != crate::witness::Bound::Unspecified {
        let id = e.id(&w.module);
        report.push(
            &name,
            format!("id {:?}", c.id),
            c.id.admits(id),
            format!("id = {id}"),
        );
    }
    let ind = is_indecomposable(&g, &w.module);
    let (ok, detail) = match ind {
        Indecomposability::Yes => (true, "yes"),
        Indecomposability::Unknown => (true, "unknown"),
        Indecomposability::No(_) => (false, "splits"),
    };
    report.push(&name, "indecomposable", ok, detail);
}

/// Pairwise non-isomorphism within each one-parameter family of `ws`.
fn check_families(report: &mut VerificationReport, ws: &[Witness]) {
    for i in 0..ws.len() {
        for j in i + 1..ws.len() {
            let (a, b) = (&ws[i], &ws[j]);
            if a.spec.tag() != b.spec.tag()
                || a.presentation != b.presentation
                || a.spec.lambda().is_none()
            {
                continue;
            }
            let g = a.presentation.to_general();
            let distinct = iso(&g, &a.module, &b.module).is_none();
            report.push(
                &format!("{} vs {}", describe(&a.spec), describe(&b.spec)),
                "non-isomorphic",
                distinct,
                if distinct {
                    "no isomorphism"
                } else {
                    "isomorphic"
                },
            );
        }
    }
}

fn generic_toupie(lengths: Vec<usize>, w: &Subspace<Rationals>) -> ToupiePresentation {
    ToupiePresentation::new(
        FieldSpec::Rational,
        lengths,
        w.basis()
            .into_iter()
            .map(ToupieRelation::Combination)
            .collect(),
    )
}

/// Runs the engine checks behind `label`. `seed` drives the random modules
/// of the `m = 0` property.
pub fn verify(
    p: &ToupiePresentation,
    label: ClassLabel,
    ev: &Evidence,
    seed: u64,
) -> Result<VerificationReport, AlgebraError> {
    let mut report = VerificationReport::default();
    let c = close_ideal(p).map_err(|_| AlgebraError::PrimeFieldUnsupported)?;
    let mut built = Vec::new();
    for spec in &ev.witnesses {
        match spec.build() {
            Some(Ok(w)) => {
                check_witness(&mut report, &w);
                built.push(w);
            }
            Some(Err(e)) => report.push(&describe(spec), "constructible", false, format!("{e}")),
            None => {}
        }
    }
    check_families(&mut report, &built);

    let t = ev.t;
    let m = ev.m;
    match ev.fired_case {
        cases::T_I => {
            let e = RepEngine::from_toupie(p)?;
            let q = e.quiver();
            let r = e.rad_p0();
            let ind = matches!(is_indecomposable(q, &r), Indecomposability::Yes);
            report.push(
                "rad P_0",
                "indecomposable",
                ind,
                format!("dims {:?}", r.dims),
            );
            let soc = r.socle(q);
            let sink = e.vertex_count() - 1;
            let simple_sink = soc
                .dims
                .iter()
                .enumerate()
                .all(|(x, &d)| d == usize::from(x == sink));
            report.push(
                "rad P_0",
                "socle = S_inf",
                simple_sink,
                format!("socle dims {:?}", soc.dims),
            );
        }
        cases::T_II => {
            let e = RepEngine::from_toupie(p)?;
            let q = e.quiver();
            let tau = e.tau(&e.rad_p0());
            let target = tilted_tau_target(&p.quiver).expect("at most one long branch");
            let x = p.quiver.vertex_index(target).expect("vertex");
            let found = iso(q, &tau, &e.projective(x)).is_some();
            report.push(
                "tau(rad P_0)",
                format!("isomorphic to P_{target}"),
                found,
                format!("dims {:?}", tau.dims),
            );
        }
        cases::NL_MANY_BRANCHES => {
            let b = generic_toupie(vec![2; t], &c.w);
            let e = RepEngine::from_toupie(&b)?;
            let tau = e.tau(&e.rad_p0());
            let mut want = vec![m * (t - m) + 1 - t];
            want.extend(vec![t - m - 1; t]);
            want.push(t - m);
            report.push(
                "tau(rad P_0) on length-2 branches",
                "dimension vector",
                tau.dims == want,
                format!("{:?}", tau.dims),
            );
            let pd = e.pd(&tau);
            report.push(
                "tau(rad P_0) on length-2 branches",
                "pd >= 2",
                pd >= 2,
                format!("pd = {pd}"),
            );
        }
        cases::NL_TWO_LONG => {
            let long: Vec<usize> = (0..t).filter(|&i| ev.lengths[i] >= 3).take(2).collect();
            let lengths = (0..t)
                .map(|i| if long.contains(&i) { 3 } else { 2 })
                .collect();
            let b = generic_toupie(lengths, &c.w);
            let e = RepEngine::from_toupie(&b)?;
            let tau3 = e.tau_power(&e.rad_p0(), 3);
            let r = (t * t + 5).checked_sub(5 * t);
            let top = tau3.dims[0];
            report.push(
                "tau^3(rad P_0)",
                "top entry t^2-5t+5",
                Some(top) == r,
                format!("dims {:?}", tau3.dims),
            );
            let pd = e.pd(&tau3);
            report.push("tau^3(rad P_0)", "pd >= 2", pd >= 2, format!("pd = {pd}"));
        }
        _ => {}
    }
    for w in &built {
        if let WitnessSpec::InfiniteFamily { .. } = w.spec {
            let e = RepEngine::from_toupie(&w.presentation)?;
            let g = e.quiver().clone();
            let sink = e.vertex_count() - 1;
            let from_p0 = !e.hom_basis(&e.projective(0), &w.module).is_empty();
            let to_i = !crate::rep::hom_basis(&g, &w.module, &e.injective(sink)).is_empty();
            report.push(
                &describe(&w.spec),
                "P_0 -> N -> I_inf nonzero",
                from_p0 && to_i,
                "",
            );
        }
    }
    if label == ClassLabel::LauraNotWeaklyShod {
        let g = p.to_general();
        let mut n = 0;
        for spec in &ev.witnesses {
            if let WitnessSpec::Dxy { x, y } = spec {
                let d = crate::witness::build_d_xy(p, *x, *y)
                    .ok()
                    .filter(|d| d.check(&g).unwrap_or(false));
                report.push(&describe(spec), "relations", d.is_some(), "");
                if let Some(d) = d {
                    let ind = !matches!(is_indecomposable(&g, &d), Indecomposability::No(_));
                    report.push(
                        &describe(spec),
                        "indecomposable",
                        ind,
                        format!("dims {:?}", d.dims),
                    );
                }
                n += 1;
            }
        }
        report.push("D_xy", "three modules", n == 3, format!("{n} built"));
    }
    if m == 0 && t >= 2 {
        check_zero_or_sink(&mut report, p, seed)?;
    }
    if let ClassLabel::LinearCase { tilted } = label {
        let shape = BranchShape {
            length: ev.lengths[0],
            monomials: c.minimal_zero_subpaths(0),
        };
        let (found, gl) = linear_obstructions(&shape);
        let quasitilted = found.is_empty() && gl <= 2;
        report.push(
            "linear algebra",
            "tilted iff quasitilted by interval search",
            quasitilted == tilted,
            format!(
                "global dimension {gl}, {} intervals with pd, id >= 2",
                found.len()
            ),
        );
    }
    Ok(report)
}

/// Every indecomposable summand `X` of a seeded random module has `X_0 = 0`
/// or `X_inf = 0`.
fn check_zero_or_sink(
    report: &mut VerificationReport,
    p: &ToupiePresentation,
    seed: u64,
) -> Result<(), AlgebraError> {
    let e = RepEngine::from_toupie(p)?;
    let q = e.quiver().clone();
    let sink = e.vertex_count() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summands = 0;
    let mut unsplit = 0;
    let mut bad = Vec::new();
    for k in 0..RANDOM_SAMPLES {
        let m = random_representation(&e, &mut rng, RANDOM_MAX_DIM);
        let (parts, complete) = decompose(&q, &m);
        if !complete {
            unsplit += 1;
        }
        for x in parts {
            summands += 1;
            if x.dims[0] != 0 && x.dims[sink] != 0 && complete {
                bad.push(format!("sample {k}: summand dims {:?}", x.dims));
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("{summands} summands from {RANDOM_SAMPLES} modules, {unsplit} not fully split")
    } else {
        bad.join("; ")
    };
    report.push(
        "random modules",
        "M_0 = 0 or M_inf = 0",
        bad.is_empty(),
        detail,
    );
    Ok(())
}

/// Vertex label used in check subjects.
pub fn vertex_label(v: ToupieVertex) -> String {
    format!("{v}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toupie::PathRef;
    use crate::toupie::ToupieRelation::{Combination, Monomial};

    fn comb(v: &[i64]) -> ToupieRelation {
        Combination(v.iter().map(|&x| scalar(x)).collect())
    }

    fn pres(lengths: &[usize], rels: Vec<ToupieRelation>) -> ToupiePresentation {
        ToupiePresentation::new(FieldSpec::Rational, lengths.to_vec(), rels)
    }

    fn label(p: &ToupiePresentation) -> ClassLabel {
        classify(p).unwrap().0
    }

    #[test]
    fn decision_tree_examples() {
        assert_eq!(label(&pres(&[2, 2, 2], vec![])), ClassLabel::Hereditary);
        assert_eq!(
            label(&pres(
                &[3, 3, 2, 2],
                vec![comb(&[1, 1, -1, 0]), comb(&[1, 2, 0, -1])]
            )),
            ClassLabel::QuasitiltedNotTilted
        );
        assert_eq!(
            label(&pres(
                &[3, 3],
                vec![
                    Monomial(PathRef::new(0, 0, 3)),
                    Monomial(PathRef::new(1, 0, 3))
                ]
            )),
            ClassLabel::TiltedNotHereditary
        );
        // Branch 2 carries a nonzero path, so m = 1 with branch 1 in the ideal.
        assert_eq!(
            label(&pres(
                &[4, 3],
                vec![
                    Monomial(PathRef::new(0, 0, 2)),
                    Monomial(PathRef::new(0, 2, 4))
                ]
            )),
            ClassLabel::LauraNotWeaklyShod
        );
        assert_eq!(
            label(&pres(
                &[4, 3],
                vec![
                    Monomial(PathRef::new(0, 0, 2)),
                    Monomial(PathRef::new(0, 2, 4)),
                    Monomial(PathRef::new(1, 0, 3))
                ]
            )),
            ClassLabel::WeaklyShodNotQuasitilted
        );
        assert_eq!(
            label(&pres(&[3, 1], vec![Monomial(PathRef::new(0, 0, 3))])),
            ClassLabel::LauraNotWeaklyShod
        );
        assert_eq!(
            label(&pres(&[2, 2, 2], vec![comb(&[1, -1, 0])])),
            ClassLabel::NotLaura
        );
        assert_eq!(
            label(&pres(&[2, 2], vec![comb(&[1, -1])])),
            ClassLabel::TiltedNotHereditary
        );
        assert_eq!(
            label(&pres(
                &[2; 5],
                vec![comb(&[1, 1, 1, 1, 1]), comb(&[1, 2, 3, 4, 5])]
            )),
            ClassLabel::NotLaura
        );
        assert_eq!(
            label(&pres(&[2, 2, 2, 5], vec![comb(&[1, 1, 1, 1])])),
            ClassLabel::TiltedNotHereditary
        );
    }

    #[test]
    fn linear_case() {
        assert_eq!(
            label(&pres(&[4], vec![Monomial(PathRef::new(0, 1, 3))])),
            ClassLabel::LinearCase { tilted: true }
        );
        let two = pres(
            &[4],
            vec![
                Monomial(PathRef::new(0, 0, 2)),
                Monomial(PathRef::new(0, 2, 4)),
            ],
        );
        let (l, ev) = classify(&two).unwrap();
        assert_eq!(l, ClassLabel::LinearCase { tilted: false });
        assert!(verify(&two, l, &ev, 0).unwrap().ok());
    }

    #[test]
    fn canonical_overlap_warns() {
        let (l, ev) = classify(&pres(&[2, 2, 2], vec![comb(&[1, 1, -1])])).unwrap();
        assert_eq!(l, ClassLabel::QuasitiltedNotTilted);
        assert_eq!(ev.warnings.len(), 1);
    }

    #[test]
    fn cut_shape_shifts() {
        let p = pres(
            &[5, 2],
            vec![
                Monomial(PathRef::new(0, 0, 3)),
                Monomial(PathRef::new(0, 3, 5)),
            ],
        );
        let c = close_ideal(&p).unwrap();
        let s = cut_shape(&c, 0);
        assert_eq!(s.length, 4);
        assert_eq!(s.monomials, vec![(0, 2), (2, 4)]);
    }

    #[test]
    fn verify_passes_on_tilted_fixture() {
        let p = pres(&[2, 2, 2, 5], vec![comb(&[1, 1, 1, 1])]);
        let (l, ev) = classify(&p).unwrap();
        let r = verify(&p, l, &ev, 0).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.checks.len(), 1);
    }

    #[test]
    fn verify_laura() {
        let p = pres(&[3, 1], vec![Monomial(PathRef::new(0, 0, 3))]);
        let (l, ev) = classify(&p).unwrap();
        let r = verify(&p, l, &ev, 0).unwrap();
        assert!(r.ok(), "{r:?}");
    }
}
