//! Acceptance criteria 1 to 10, one PASS/FAIL line each.
//!
//! Criteria 1, 3 and 5 have recorded deviations (see the README); for those
//! the harness checks that the failure is exactly the recorded one. The
//! process exits nonzero when any criterion departs from its expected
//! outcome.

mod common;
#[path = "../../core/tests/common/mod.rs"]
mod oracle;

use std::collections::BTreeSet;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use toupie_core::algebra::BasedAlgebra;
use toupie_core::classifier::{classify, ClassLabel};
use toupie_core::field::{scalar, FieldSpec};
use toupie_core::ideal::close_ideal;
use toupie_core::minimal::minimal_relations;
use toupie_core::rep::{decompose, iso, random_representation, RepEngine, Representation};
use toupie_core::toupie::{recognize_toupie, PathRef, ToupiePresentation, ToupieRelation};
use toupie_core::witness::{
    build_branch_in_ideal_m1, build_branch_in_ideal_m2, build_no_branch_in_ideal,
    tilted_tau_target, BranchShape, Witness,
};

fn comb(v: &[i64]) -> ToupieRelation {
    ToupieRelation::Combination(v.iter().map(|&x| scalar(x)).collect())
}

fn mono(b: usize, x: usize, y: usize) -> ToupieRelation {
    ToupieRelation::Monomial(PathRef::new(b, x, y))
}

fn toupie(lengths: &[usize], relations: Vec<ToupieRelation>) -> ToupiePresentation {
    ToupiePresentation::new(FieldSpec::Rational, lengths.to_vec(), relations)
}

/// Result of one criterion. `as_expected` is `pass` unless the criterion has
/// a recorded deviation, in which case it says whether the observed failure
/// is exactly the recorded one.
struct Outcome {
    pass: bool,
    as_expected: bool,
    detail: String,
}

fn plain(pass: bool, detail: String) -> Outcome {
    Outcome {
        pass,
        as_expected: pass,
        detail,
    }
}

fn p_inf_multiplicity(e: &RepEngine, m: &Representation) -> usize {
    let inf = e.vertex_count() - 1;
    e.resolution_terms(m)
        .last()
        .map_or(0, |t| t.iter().filter(|&&v| v == inf).count())
}

fn pairwise_non_isomorphic(ws: &[Witness]) -> bool {
    let q = ws[0].presentation.to_general();
    ws.iter().enumerate().all(|(i, a)| {
        ws[i + 1..]
            .iter()
            .all(|b| iso(&q, &a.module, &b.module).is_none())
    })
}

fn criterion_1() -> Outcome {
    use ClassLabel::*;
    let examples: Vec<(&str, ToupiePresentation, ClassLabel)> = vec![
        ("(2,2,2) I=0", toupie(&[2, 2, 2], vec![]), Hereditary),
        (
            "canonical (3,3,2,2) lambda=(1,2)",
            toupie(
                &[3, 3, 2, 2],
                vec![comb(&[1, 1, -1, 0]), comb(&[1, 2, 0, -1])],
            ),
            QuasitiltedNotTilted,
        ),
        (
            "(3,3) one monomial per branch",
            toupie(&[3, 3], vec![mono(0, 0, 3), mono(1, 0, 3)]),
            TiltedNotHereditary,
        ),
        (
            "(4,3) monomials (0,2),(2,4) on branch 1",
            toupie(&[4, 3], vec![mono(0, 0, 2), mono(0, 2, 4)]),
            WeaklyShodNotQuasitilted,
        ),
        (
            "(3,1) monomial (0,3)",
            toupie(&[3, 1], vec![mono(0, 0, 3)]),
            LauraNotWeaklyShod,
        ),
        (
            "(2,2,2) W=(1,-1,0)",
            toupie(&[2, 2, 2], vec![comb(&[1, -1, 0])]),
            NotLaura,
        ),
        (
            "(2,2) W=(1,-1)",
            toupie(&[2, 2], vec![comb(&[1, -1])]),
            TiltedNotHereditary,
        ),
        (
            "(2,2,2,2,2) W=(1,1,1,1,1),(1,2,3,4,5)",
            toupie(
                &[2; 5],
                vec![comb(&[1, 1, 1, 1, 1]), comb(&[1, 2, 3, 4, 5])],
            ),
            NotLaura,
        ),
        (
            "(2,2,2,5) W=(1,1,1,1)",
            toupie(&[2, 2, 2, 5], vec![comb(&[1, 1, 1, 1])]),
            TiltedNotHereditary,
        ),
    ];
    let mut mismatches = Vec::new();
    for (name, p, want) in &examples {
        let (got, _) = classify(&p.canonicalize()).unwrap();
        if got != *want {
            mismatches.push(format!(
                "{name}: expected {}, got {}",
                want.slug(),
                got.slug()
            ));
        }
    }
    let variant = toupie(&[4, 3], vec![mono(0, 0, 2), mono(0, 2, 4), mono(1, 0, 3)]);
    let (v, _) = classify(&variant.canonicalize()).unwrap();
    let recorded = mismatches
        == ["(4,3) monomials (0,2),(2,4) on branch 1: expected weakly-shod-not-quasitilted, got laura-not-weakly-shod"]
        && v == WeaklyShodNotQuasitilted;
    let detail = format!(
        "{} of {} examples match; {}; m=0 variant with (0,3) on branch 2 gives {}",
        examples.len() - mismatches.len(),
        examples.len(),
        if mismatches.is_empty() {
            "no mismatches".into()
        } else {
            mismatches.join("; ")
        },
        v.slug()
    );
    Outcome {
        pass: mismatches.is_empty(),
        as_expected: recorded,
        detail,
    }
}

fn criterion_2() -> Outcome {
    let mut bad = Vec::new();
    let mut seen = Vec::new();
    for (t, m) in [(5usize, 3usize), (6, 3), (6, 4)] {
        let rows = (0..(t - m) as u32)
            .map(|k| {
                ToupieRelation::Combination((1..=t as i64).map(|i| scalar(i.pow(k))).collect())
            })
            .collect();
        let p = toupie(&vec![2; t], rows);
        let c = close_ideal(&p).unwrap();
        let sc = minimal_relations(&c).unwrap().is_simply_connected();
        let e = RepEngine::from_toupie(&p).unwrap();
        let dims = e.tau(&e.rad_p0()).dims;
        let r = m * (t - m) + 1 - t;
        let mut want = vec![r];
        want.extend(vec![t - m - 1; t]);
        want.push(t - m);
        let identity = r == (m - 1) * (t - m - 1) && r > 0;
        if c.m != m || !sc || dims != want || !identity {
            bad.push(format!(
                "(t,m)=({t},{m}): m={} sc={sc} dims {dims:?}, expected {want:?}",
                c.m
            ));
        }
        seen.push(format!("({t},{m}) {dims:?}"));
    }
    plain(
        bad.is_empty(),
        if bad.is_empty() {
            seen.join(", ")
        } else {
            bad.join("; ")
        },
    )
}

fn criterion_3() -> Outcome {
    let p = common::fixture("not_laura_two_long");
    let lengths = p.lengths().to_vec();
    let t = lengths.len();
    let e = RepEngine::from_toupie(&p).unwrap();
    let m = e.tau_power(&e.rad_p0(), 3);
    let q = e.quiver();
    let pd = e.pd(&m);
    // Expected: top t^2-5t+5, 1 at the first vertex of each long branch, 0 at
    // the other inner vertices, 1 at inf.
    let mut want = vec![t * t + 5 - 5 * t];
    for &l in &lengths {
        for j in 1..l {
            want.push(usize::from(l >= 3 && j == 1));
        }
    }
    want.push(1);
    let diff: Vec<String> = (0..want.len())
        .filter(|&i| m.dims[i] != want[i])
        .map(|i| {
            format!(
                "vertex {}: expected {}, got {}",
                q.vertices[i], want[i], m.dims[i]
            )
        })
        .collect();
    let pass = diff.is_empty() && pd >= 2;
    let recorded = m.dims[0] == 1 && pd >= 2 && diff == ["vertex inf: expected 1, got 0"];
    Outcome {
        pass,
        as_expected: recorded,
        detail: format!(
            "tau^3(rad P0) = {:?}, top {} = t^2-5t+5, pd {pd}{}",
            m.dims,
            m.dims[0],
            if diff.is_empty() {
                String::new()
            } else {
                format!("; {}", diff.join("; "))
            }
        ),
    }
}

fn criterion_4() -> Outcome {
    let p = common::fixture("tilted_t4_long3");
    let e = RepEngine::from_toupie(&p).unwrap();
    let target = tilted_tau_target(&p.quiver).unwrap();
    let x = p.quiver.vertex_index(target).unwrap();
    let tau = e.tau(&e.rad_p0());
    let found = iso(e.quiver(), &tau, &e.projective(x)).is_some();
    plain(
        found,
        format!(
            "tau(rad P0) {:?} vs P_{target}: isomorphism {}",
            tau.dims,
            if found { "found" } else { "missing" }
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut lines = Vec::new();
    // The (r, s, m) = (2, 1, 2) family: pd = id = 2 and k = 2(r-m+s)-1 = 1.
    let family: Vec<Witness> = (1..=3)
        .map(|l| build_no_branch_in_ideal(2, 1, 2, scalar(l)).unwrap())
        .collect();
    let e = RepEngine::from_toupie(&family[0].presentation).unwrap();
    let mut observed = Vec::new();
    for (l, w) in (1..=3).zip(&family) {
        let (pd, id, k) = (
            e.pd(&w.module),
            e.id(&w.module),
            p_inf_multiplicity(&e, &w.module),
        );
        if (pd, id, k) != (2, 2, 1) {
            lines.push(format!("(2,1,2) lambda={l}: pd {pd}, id {id}, k {k}"));
        }
        observed.push((pd, id, k));
    }
    if !pairwise_non_isomorphic(&family) {
        lines.push("(2,1,2): isomorphic members".into());
    }
    // Families attached to the corpus: pd >= 2, id >= 2 where the contract
    // asks for it, and pairwise non-isomorphic lambda-families.
    let mut checked = 0;
    for name in [
        "not_laura_branch_in_ideal_m3",
        "not_laura_two_in_ideal",
        "laura_t2",
        "laura_two_monomials",
        "not_laura_two_long",
    ] {
        let (_, ev) = classify(&common::fixture(name)).unwrap();
        let ws: Vec<Witness> = ev
            .witnesses
            .iter()
            .filter_map(|s| s.build())
            .map(Result::unwrap)
            .collect();
        for w in &ws {
            let e = RepEngine::from_toupie(&w.presentation).unwrap();
            let (pd, id) = (e.pd(&w.module), e.id(&w.module));
            if !w.contract.pd.admits(pd) || !w.contract.id.admits(id) {
                lines.push(format!("{name} {}: pd {pd}, id {id}", w.spec.tag()));
            }
            checked += 1;
        }
        let lambda_family: Vec<Witness> = ws
            .into_iter()
            .filter(|w| w.spec.lambda().is_some())
            .collect();
        if lambda_family.len() > 1 && !pairwise_non_isomorphic(&lambda_family) {
            lines.push(format!("{name}: isomorphic family members"));
        }
    }
    // Shapes without a zero relation ending at inf other than from 0.
    let probes = [
        build_branch_in_ideal_m2(
            BranchShape {
                length: 3,
                monomials: vec![(0, 2)],
            },
            3,
            scalar(1),
        ),
        build_branch_in_ideal_m1(BranchShape {
            length: 4,
            monomials: vec![(0, 2), (1, 3)],
        }),
    ];
    let mut probe_ids = Vec::new();
    for w in probes.into_iter().map(Result::unwrap) {
        let e = RepEngine::from_toupie(&w.presentation).unwrap();
        let (pd, id) = (e.pd(&w.module), e.id(&w.module));
        let params: Vec<String> = w
            .spec
            .params()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        if pd < 2 || id < 2 {
            lines.push(format!(
                "{} {}: pd {pd}, id {id}",
                w.spec.tag(),
                params.join(" ")
            ));
        }
        probe_ids.push((pd >= 2, id));
    }
    let recorded = observed == [(1, 2, 2), (1, 1, 2), (1, 1, 2)]
        && probe_ids == [(true, 1), (true, 1)]
        && lines.len() == 5;
    Outcome {
        pass: lines.is_empty(),
        as_expected: recorded,
        detail: format!(
            "{checked} corpus witnesses and 2 probe shapes checked; {}",
            if lines.is_empty() {
                "all contracts hold".into()
            } else {
                lines.join("; ")
            }
        ),
    }
}

fn criterion_6() -> Outcome {
    let instances = oracle::oracle_instances(50, 6);
    let mut bad = Vec::new();
    for (k, p) in instances.iter().enumerate() {
        let got: BTreeSet<Vec<usize>> = minimal_relations(&close_ideal(p).unwrap())
            .unwrap()
            .supports()
            .into_iter()
            .collect();
        if got != oracle::minimal_supports_modp(&oracle::relation_space_modp(p)) {
            bad.push(k);
        }
    }
    plain(
        bad.is_empty(),
        format!("{} instances, mismatches at {bad:?}", instances.len()),
    )
}

fn corpus_engines() -> Vec<(String, RepEngine)> {
    common::fixture_names()
        .into_iter()
        .map(|n| {
            let e = RepEngine::from_toupie(&common::fixture(&n)).unwrap();
            (n, e)
        })
        .collect()
}

fn criterion_7() -> Outcome {
    let engines = corpus_engines();
    let mut bad: Vec<String> = engines
        .iter()
        .flat_map(|(n, e)| oracle::algebra_failures(e, n))
        .collect();
    bad.extend(oracle::random_module_failures(&engines, 200, 0));
    plain(
        bad.is_empty(),
        format!(
            "{} algebras, 200 random modules; {} failures {:?}",
            engines.len(),
            bad.len(),
            bad.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let (mut summands, mut bad, mut fixtures) = (0, Vec::new(), 0);
    for (name, e) in corpus_engines() {
        if close_ideal(&common::fixture(&name)).unwrap().m != 0 {
            continue;
        }
        fixtures += 1;
        let q = e.quiver().clone();
        let inf = e.vertex_count() - 1;
        for k in 0..20 {
            let m = random_representation(&e, &mut rng, 10);
            let (parts, complete) = decompose(&q, &m);
            if !complete {
                bad.push(format!("{name} #{k}: incomplete split"));
            }
            for s in parts {
                summands += 1;
                if s.dims[0] != 0 && s.dims[inf] != 0 {
                    bad.push(format!("{name} #{k}: summand {:?}", s.dims));
                }
            }
        }
    }
    plain(
        bad.is_empty() && fixtures >= 3,
        format!(
            "{fixtures} m=0 fixtures, {summands} summands; {}",
            if bad.is_empty() {
                "M_0 = 0 or M_inf = 0 throughout".into()
            } else {
                bad.join("; ")
            }
        ),
    )
}

fn class_rank(p: &ToupiePresentation) -> (u8, &'static str) {
    let (l, ev) = classify(p).unwrap();
    (ev.rank(l), l.slug())
}

fn criterion_9() -> Outcome {
    let designated: [(&str, &[&str]); 6] = [
        ("not_laura_no_branch_in_ideal", &["0", "1.1", "2.1", "inf"]),
        ("not_laura_not_canonical", &["0", "3.1", "4.1", "inf"]),
        (
            "not_laura_two_long",
            &["0", "1.1", "2.1", "3.1", "4.1", "inf"],
        ),
        ("not_laura_branch_in_ideal_m3", &["0", "4.1", "4.2", "inf"]),
        ("not_laura_two_in_ideal", &["0", "2.1", "2.2", "3.2", "inf"]),
        ("weakly_shod_m0", &["0", "2.1", "2.2", "2.3", "inf"]),
    ];
    let mut bad = Vec::new();
    let mut shown = Vec::new();
    for (name, verts) in designated {
        let p = common::fixture(name);
        let a = BasedAlgebra::from_toupie(&p).unwrap();
        let idx: Vec<usize> = verts.iter().map(|v| a.vertex_index(v).unwrap()).collect();
        match recognize_toupie(&a.truncate(&idx).unwrap()) {
            None => bad.push(format!("{name}: truncation is not a toupie")),
            Some(q) => {
                let ((ra, la), (re, le)) = (class_rank(&p), class_rank(&q));
                if re > ra {
                    bad.push(format!("{name}: {le} inside {la}"));
                }
                shown.push(format!("{name} {le} <= {la}"));
            }
        }
    }
    // Every toupie truncation containing 0 and inf, across the corpus.
    let mut swept = 0;
    for name in common::fixture_names() {
        let p = common::fixture(&name);
        let (ra, la) = class_rank(&p);
        let a = BasedAlgebra::from_toupie(&p).unwrap();
        let n = a.vertex_count();
        for mask in 0u32..1 << (n - 2) {
            let mut verts = vec![0];
            verts.extend((1..n - 1).filter(|&i| mask >> (i - 1) & 1 == 1));
            verts.push(n - 1);
            if let Some(q) = recognize_toupie(&a.truncate(&verts).unwrap()) {
                let (re, le) = class_rank(&q);
                if re > ra {
                    bad.push(format!("{name} at {verts:?}: {le} inside {la}"));
                }
                swept += 1;
            }
        }
    }
    plain(
        bad.is_empty(),
        format!(
            "{}; {swept} corpus truncations; {}",
            shown.join(", "),
            if bad.is_empty() {
                "no violations".into()
            } else {
                bad.join("; ")
            }
        ),
    )
}

fn criterion_10() -> Outcome {
    let paths: Vec<String> = common::fixture_names()
        .iter()
        .map(|n| common::fixture_path(n))
        .collect();
    let batch = |jobs: &str, reverse: bool| {
        let mut args = vec!["classify", "--verify", "--json", "--jobs", jobs];
        let mut ps: Vec<&str> = paths.iter().map(String::as_str).collect();
        if reverse {
            ps.reverse();
        }
        args.extend(ps);
        common::run(&args)
    };
    let a = batch("1", false);
    let b = batch("1", false);
    let c = batch("4", true);
    let singles_match = paths.iter().all(|p| {
        let x = common::run(&["classify", "--verify", "--json", p]);
        let y = common::run(&["classify", "--verify", "--json", "--jobs", "3", p]);
        x.stdout == y.stdout
    });
    let pass = a.stdout == b.stdout && a.stdout == c.stdout && a.code == c.code && singles_match;
    plain(
        pass,
        format!(
            "{} inputs, {} bytes of JSON, repeated and --jobs 4 runs identical: {pass}",
            paths.len(),
            a.stdout.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("classify examples", criterion_1),
        ("tau(rad P0) dimension vectors", criterion_2),
        ("tau^3(rad P0)", criterion_3),
        ("tilted tau identity", criterion_4),
        ("witness contracts", criterion_5),
        ("minimal-relation oracle", criterion_6),
        ("homological properties", criterion_7),
        ("M_0 = 0 or M_inf = 0 on m = 0", criterion_8),
        ("monotonicity under truncation", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut unexpected = Vec::new();
    for (i, (title, f)) in criteria.iter().enumerate() {
        let o = f();
        let mark = if o.pass { "PASS" } else { "FAIL" };
        let note = if o.pass || !o.as_expected {
            ""
        } else {
            " (recorded deviation)"
        };
        println!("criterion {} {mark}{note}: {title}: {}", i + 1, o.detail);
        if !o.as_expected {
            unexpected.push(i + 1);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria departing from their expected outcome: {unexpected:?}");
        std::process::exit(1);
    }
}
