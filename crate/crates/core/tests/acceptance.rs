//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rlie_core::catalog::{self, HeisenbergPmap};
use rlie_core::endo::{self, ClassificationStatus, HellerMatch, DEFAULT_DEPTH};
use rlie_core::format::emit_algebra;
use rlie_core::u0rep::{characters, is_isomorphic};
use rlie_core::variety::{self, EdgePredicate, IncidenceGraph, Plane};
use rlie_core::{Element, Fe, Field, Matrix, RepModule, RestrictedLieAlgebra, Subspace, U0Algebra};
use serde_json::json;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn f3() -> Field {
    Field::prime(3).unwrap()
}

fn f9() -> Field {
    Field::new(3, 2, None).unwrap()
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ea(r: usize) -> RestrictedLieAlgebra {
    catalog::elementary_abelian(&f3(), r).unwrap()
}

fn heis() -> RestrictedLieAlgebra {
    catalog::heisenberg(&f3(), HeisenbergPmap::Zero).unwrap()
}

fn he() -> RestrictedLieAlgebra {
    catalog::two_dim_nonabelian(&f3()).unwrap()
}

fn chars(l: &RestrictedLieAlgebra) -> Vec<Vec<Fe>> {
    characters(l, 1 << 20).unwrap()
}

/// `K_lambda` and `Omega^(+-1), Omega^(+-2)` of it, for every character.
fn corpus_of(name: &str, l: &RestrictedLieAlgebra) -> Vec<(String, RepModule)> {
    let mut out = vec![];
    for lambda in chars(l) {
        let k = RepModule::character_module(l, &lambda).unwrap();
        for n in [0, 1, -1, 2, -2] {
            out.push((format!("{name} Omega^{n}(K{lambda:?})"), k.heller(n)));
        }
    }
    out
}

fn corpus() -> Vec<(String, RepModule)> {
    let mut out = corpus_of("heisenberg", &heis());
    out.extend(corpus_of("ea3", &ea(3)));
    out.extend(corpus_of("<h,e>", &he()));
    out
}

fn rad_z0() -> RepModule {
    catalog::rad_z0(&f3()).unwrap()
}

fn plane(u: &[Fe], v: &[Fe]) -> Plane {
    Plane::spanned_by(&f3(), u, v).unwrap()
}

fn heller_dims() -> Outcome {
    let k = RepModule::trivial(&ea(2)).unwrap();
    let up: Vec<usize> = (1..=4).map(|n| k.heller(n).dim()).collect();
    let down: Vec<usize> = (1..=4).map(|n| k.heller(-n).dim()).collect();
    check(up == [8, 10, 17, 19], || format!("p=3 positive shifts {up:?}"))?;
    check(down == [8, 10, 17, 19], || format!("p=3 negative shifts {down:?}"))?;
    let f5 = Field::prime(5).unwrap();
    let k5 = RepModule::trivial(&catalog::elementary_abelian(&f5, 2).unwrap()).unwrap();
    let five = [k5.heller(1).dim(), k5.heller(2).dim()];
    check(five == [24, 26], || format!("p=5 shifts {five:?}"))?;
    Ok(format!("p=3 {up:?} and {down:?}, p=5 {five:?}"))
}

fn sl2_s_golden() -> Outcome {
    let f = f3();
    let l = catalog::sl2_s(&f).unwrap();
    let nullcone = variety::nullcone_points(&l, &f).unwrap().len();
    check(nullcone == 15, || format!("|V(F_3)| = {nullcone}"))?;
    let planes = variety::e2_points(&l, &f).unwrap();
    let labels: BTreeSet<String> = planes.iter().map(|e| e.label(l.names())).collect();
    let expected: BTreeSet<String> = ["<e, c0>", "<f, c0>"].map(String::from).into();
    check(labels == expected, || format!("E(2) = {labels:?}"))?;
    let graph = IncidenceGraph::build(&l, planes, EdgePredicate::Pencil);
    check(graph.component_count() == 2, || format!("{} components", graph.component_count()))?;
    let z0 = catalog::baby_verma_z0(&f).unwrap();
    let rad = rad_z0();
    check(z0.dim() == 9 && rad.dim() == 8, || format!("dims {} and {}", z0.dim(), rad.dim()))?;
    let computed = z0.radical_submodule();
    check(is_isomorphic(&computed, &rad, 1).is_true(), || "Rad(Z(0)) differs from J(U_0) Z(0)".into())?;
    check(endo::is_endotrivial(&rad).unwrap(), || "Rad(Z(0)) not endotrivial".into())?;
    let e_f = endo::syzygy_value(&rad, &plane(&[0, 0, 1, 0], &[0, 0, 0, 1]), &f).unwrap();
    let e_e = endo::syzygy_value(&rad, &plane(&[1, 0, 0, 0], &[0, 0, 0, 1]), &f).unwrap();
    check((e_f, e_e) == (1, -1), || format!("syzygy values ({e_f}, {e_e})"))?;
    Ok("15 nilpotent points, E(2) = {<e,c0>, <f,c0>}, 2 components, dims 9/8, endotrivial, (1, -1)".into())
}

fn syz3_identity() -> Outcome {
    let f = f3();
    let mut planes = 0;
    for (name, m) in corpus() {
        for c in endo::check_syz3(&m, &f).unwrap() {
            check(c.holds, || format!("{name} at {}: 2p deg = {} vs {:?}", c.plane, c.lhs, c.rhs))?;
            planes += 1;
        }
    }
    let rad = rad_z0();
    let degs = [
        endo::degree(&rad, &plane(&[0, 0, 1, 0], &[0, 0, 0, 1]), &f).unwrap(),
        endo::degree(&rad, &plane(&[1, 0, 0, 0], &[0, 0, 0, 1]), &f).unwrap(),
    ];
    check(degs == [2, 3], || format!("Rad(Z(0)) degrees {degs:?}"))?;
    for c in endo::check_syz3(&rad, &f).unwrap() {
        check(c.holds, || format!("Rad(Z(0)) at {}: {} vs {:?}", c.plane, c.lhs, c.rhs))?;
        planes += 1;
    }
    Ok(format!("{planes} module-plane pairs, Rad(Z(0)) degrees (2, 3)"))
}

fn free_and_omega2_degrees() -> Outcome {
    let f = f3();
    let l = ea(2);
    let e = plane(&[1, 0], &[0, 1]);
    let free = endo::degree(&RepModule::free(&l, 1).unwrap(), &e, &f).unwrap();
    let omega2 = endo::degree(&RepModule::trivial(&l).unwrap().heller(2), &e, &f).unwrap();
    check((free, omega2) == (3, 1), || format!("deg free = {free}, deg Omega^2(K) = {omega2}"))?;
    Ok("deg free = 3, deg Omega^2(K) = 1".into())
}

fn duality() -> Outcome {
    let f = f3();
    let mut planes = 0;
    let mut all = corpus();
    all.push(("Rad(Z(0))".into(), rad_z0()));
    for (name, m) in all {
        for c in endo::check_degree_duality(&m, &f).unwrap() {
            check(c.holds, || format!("{name} at {}: {} + {} != {}", c.plane, c.degree, c.dual_degree, c.rank))?;
            planes += 1;
        }
    }
    Ok(format!("{planes} module-plane pairs"))
}

fn constant_rank() -> Outcome {
    let f = f3();
    let p = 3;
    let mut all = corpus();
    all.push(("Rad(Z(0))".into(), rad_z0()));
    let mut formula = 0;
    for (name, m) in &all {
        let r = endo::constant_rank(m, &f).unwrap();
        check(r.is_constant, || format!("{name}: ranks {:?}", r.witnesses.iter().map(|w| w.1).collect::<Vec<_>>()))?;
        if m.dim() % p == 1 {
            let want = (p - 1) * (m.dim() - 1) / p;
            check(r.rank == Some(want), || format!("{name}: rank {:?}, expected {want}", r.rank))?;
            formula += 1;
        }
    }
    Ok(format!("{} modules constant, {formula} checked against (p-1)(dim-1)/p", all.len()))
}

fn connectivity_algebras() -> Vec<(String, RestrictedLieAlgebra)> {
    let f = f3();
    let mut out = vec![("heisenberg".to_string(), heis()), ("ea3".into(), ea(3)), ("ea4".into(), ea(4))];
    for w in 0..3 {
        out.push((format!("thm_a_case(omega={w})"), catalog::thm_a_case(&f, w, 1).unwrap()));
    }
    for seed in 0..20 {
        out.push((format!("random_unipotent(seed={seed})"), catalog::random_unipotent(&f, seed).unwrap()));
    }
    out
}

fn pencil_connectivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut edges = 0;
    let mut failures = vec![];
    let algebras = connectivity_algebras();
    for (name, l) in &algebras {
        check(l.dim() <= 5, || format!("{name} has dimension {}", l.dim()))?;
        for f in [f3(), f9()] {
            let big = Field::new(3, 2 * f.degree(), None).unwrap();
            let lf = l.extend_scalars(&f).unwrap();
            let planes = variety::e2_points(&lf, &f).unwrap();
            let graph = IncidenceGraph::spanning_forest(&lf, planes, EdgePredicate::Pencil);
            let mut bad_edges = vec![];
            for &(a, b) in &graph.edges {
                let (e, e2) = (&graph.nodes[a], &graph.nodes[b]);
                if !variety::verify_pencil_over(&lf, e, e2, &big, 5, &mut rng).unwrap() {
                    bad_edges.push([e.label(l.names()), e2.label(l.names())]);
                }
            }
            edges += graph.edges.len();
            if !graph.is_connected() || !bad_edges.is_empty() {
                let components: Vec<Vec<String>> = graph
                    .components()
                    .iter()
                    .map(|c| c.iter().map(|&i| graph.nodes[i].label(l.names())).collect())
                    .collect();
                failures.push(json!({
                    "algebra": name,
                    "field_order": f.order(),
                    "structure": serde_json::from_str::<serde_json::Value>(&emit_algebra(l)).unwrap(),
                    "components": components,
                    "edges_failing_reverification": bad_edges,
                }));
            }
        }
    }
    if !failures.is_empty() {
        let names: Vec<String> =
            failures.iter().map(|c| format!("{} over F_{}", c["algebra"].as_str().unwrap(), c["field_order"])).collect();
        let report = serde_json::to_string_pretty(&json!({ "counterexamples": failures })).unwrap();
        return Err(format!(
            "{} of {} graphs certified connected; not certified: {}\n{report}",
            2 * algebras.len() - failures.len(),
            2 * algebras.len(),
            names.join(", ")
        ));
    }
    Ok(format!("{} algebras over F_3 and F_9, {edges} forest edges re-verified over F_(q^2)", algebras.len()))
}

fn classifier_roundtrip() -> Outcome {
    let f = f3();
    let mut cases = 0;
    let mut unique = 0;
    for (name, l) in [("heisenberg", heis()), ("<h,e>", he()), ("ea3", ea(3))] {
        let pims = RepModule::regular(&l).unwrap().strip_projectives().projective_summands();
        for lambda in chars(&l) {
            let k = RepModule::character_module(&l, &lambda).unwrap();
            for n in -3..=3 {
                let omega = k.heller(n);
                for free in 0..=2 {
                    let m = omega.direct_sum(&RepModule::free(&l, free).unwrap()).unwrap();
                    let what = || format!("{name} Omega^{n}(K{lambda:?}) + {free} free");
                    let r = endo::classify_endotrivial(&m, &f, DEFAULT_DEPTH, false).map_err(|e| format!("{}: {e}", what()))?;
                    check(r.status == ClassificationStatus::Classified, || format!("{}: no match", what()))?;
                    let target = HellerMatch { n, lambda: lambda.clone() };
                    check(r.matches.contains(&target), || format!("{}: matches {:?}", what(), r.matches))?;
                    if r.matches.len() == 1 {
                        check(r.n == Some(n) && r.lambda.as_ref() == Some(&lambda), || format!("{}: primary {:?}", what(), r.n))?;
                        unique += 1;
                    }
                    check(r.proj_mult == free * pims, || format!("{}: {} projective summands", what(), r.proj_mult))?;
                    let (pn, pl) = (r.n.unwrap(), r.lambda.clone().unwrap());
                    let claimed = RepModule::character_module(&l, &pl).unwrap().heller(pn);
                    let core = m.strip_projectives().core;
                    check(is_isomorphic(&core, &claimed, 99).is_true(), || format!("{}: re-verification", what()))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} modules, {unique} with a unique match"))
}

fn jacobson_algebras() -> Vec<(String, RestrictedLieAlgebra)> {
    let f = f3();
    let mut out = vec![];
    for name in catalog::NAMES {
        if let Ok(catalog::CatalogEntry { object: catalog::CatalogObject::Algebra(l), .. }) =
            catalog::build(name, &f, &Default::default())
        {
            out.push((name.to_string(), l));
        }
    }
    out.push(("heisenberg(toral)".into(), catalog::heisenberg(&f, HeisenbergPmap::ToralCenter).unwrap()));
    out.push(("thm_a_case(chain=2)".into(), catalog::thm_a_case(&f, 2, 2).unwrap()));
    out.push(("sl2 over F_9".into(), catalog::sl2(&f9()).unwrap()));
    out
}

/// `s_i(x, y)` from `ad(t x + y)^(p-1)(x)` evaluated at every `t` in `F_p`
/// and interpolated.
fn si_by_interpolation(l: &RestrictedLieAlgebra, x: &[Fe], y: &[Fe]) -> Vec<Element> {
    let f = l.field();
    let p = l.p() as usize;
    let values: Vec<Element> = (0..p - 1)
        .map(|t| {
            let z = l.add(&l.scale(f.from_int(t as i64), x), y);
            l.ad_matrix(&z).pow(p as u64 - 1).mul_vec(x)
        })
        .collect();
    let vander = Matrix::from_fn(f, p - 1, p - 1, |t, k| f.pow(f.from_int(t as i64), k as u64));
    let inv = vander.inverse().unwrap();
    (0..p - 1)
        .map(|k| {
            let mut c = l.zero();
            for (t, v) in values.iter().enumerate() {
                f.axpy(&mut c, inv[(k, t)], v);
            }
            let scale = f.inv(f.from_int(k as i64 + 1));
            c.iter().map(|&a| f.mul(scale, a)).collect()
        })
        .collect()
}

fn jacobson() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let algebras = jacobson_algebras();
    for (name, l) in &algebras {
        let f = l.field();
        for _ in 0..100 {
            let (x, y) = (l.random_element(&mut rng), l.random_element(&mut rng));
            let si = l.jacobson_si(&x, &y);
            check(si == si_by_interpolation(l, &x, &y), || format!("{name}: s_i disagree with interpolation"))?;
            let mut rhs = l.add(&l.pmap(&x), &l.pmap(&y));
            for s in &si {
                f.axpy(&mut rhs, 1, s);
            }
            check(l.pmap(&l.add(&x, &y)) == rhs, || format!("{name}: Jacobson formula fails at {x:?}, {y:?}"))?;
            let ad = l.ad_matrix(&x).pow(l.p() as u64);
            check(l.ad_matrix(&l.pmap(&x)) == ad, || format!("{name}: ad(x^[p]) != ad(x)^p"))?;
        }
    }
    let f = f3();
    let l = catalog::sl2(&f).unwrap();
    let (e, fv) = (l.basis_vector(0), l.basis_vector(2));
    let si = l.jacobson_si(&e, &fv);
    check(si == [fv.clone(), e.clone()], || format!("sl2: s_i(e, f) = {si:?}"))?;
    let as_matrix = |x: &[Fe]| {
        let two = |v: [i64; 4]| Matrix::from_vec(&f, 2, 2, v.iter().map(|&c| f.from_int(c)).collect());
        let mut m = two([0, 1, 0, 0]).scale(x[0]);
        m.add_scaled(x[1], &two([1, 0, 0, -1]));
        m.add_scaled(x[2], &two([0, 0, 1, 0]));
        m
    };
    for _ in 0..100 {
        let x = l.random_element(&mut rng);
        let y = l.random_element(&mut rng);
        for z in [x.clone(), l.add(&x, &y)] {
            check(as_matrix(&l.pmap(&z)) == as_matrix(&z).pow(3), || format!("sl2: x^[3] differs from the matrix cube at {z:?}"))?;
        }
    }
    Ok(format!("{} algebras x 100 pairs; sl2 s_1(e,f) = f, s_2(e,f) = e, matrix cube agrees", algebras.len()))
}

/// Whether repeatedly applying the generators to `U_0` reaches 0.
fn augmentation_nilpotent(u: &U0Algebra) -> bool {
    let f = u.field();
    let mut current = Subspace::full(f, u.dim());
    for _ in 0..=u.dim() {
        if current.is_zero() {
            return true;
        }
        let images: Vec<Element> = current
            .basis_vectors()
            .iter()
            .flat_map(|v| (0..u.gens()).map(move |i| u.left_mul_gen(i, v)))
            .collect();
        current = Subspace::from_vectors(f, u.dim(), &images);
    }
    false
}

fn radicals() -> Outcome {
    let f = f3();
    let mut unipotent = vec![("ea1".to_string(), ea(1)), ("ea2".into(), ea(2)), ("ea3".into(), ea(3)), ("heisenberg".into(), heis())];
    for w in 0..3 {
        unipotent.push((format!("thm_a_case(omega={w})"), catalog::thm_a_case(&f, w, 1).unwrap()));
    }
    unipotent.push(("thm_a_case_a".into(), catalog::thm_a_case_a(&f).unwrap()));
    for seed in 0..5 {
        unipotent.push((format!("random_unipotent(seed={seed})"), catalog::random_unipotent(&f, seed).unwrap()));
    }
    for (name, l) in &unipotent {
        check(l.is_unipotent(), || format!("{name} is not unipotent"))?;
        let u = U0Algebra::new(l).unwrap();
        let augmentation = Subspace::from_vectors(&f, u.dim(), &(1..u.dim()).map(|i| u.monomial(i)).collect::<Vec<_>>());
        check(u.exponents(0).iter().all(|&a| a == 0), || format!("{name}: monomial 0 is not the unit"))?;
        check(augmentation_nilpotent(&u), || format!("{name}: augmentation ideal is not nilpotent"))?;
        let rad = u.radical();
        let want = 3usize.pow(l.dim() as u32) - 1;
        check(rad.dim() == want && rad == augmentation, || format!("{name}: radical of dim {}", rad.dim()))?;
        let module_rad = RepModule::regular(l).unwrap().radical();
        check(module_rad == augmentation, || format!("{name}: J(U_0) U_0 has dim {}", module_rad.dim()))?;
    }
    for r in 1..=2 {
        let l = catalog::torus(&f, r).unwrap();
        let u = U0Algebra::new(&l).unwrap();
        let semisimple = (0..u.gens()).all(|i| {
            let a = u.regular_action(i);
            a.pow(3) == a
        });
        check(semisimple, || format!("torus({r}): a generator is not semisimple"))?;
        check(u.radical().is_zero(), || format!("torus({r}): radical of dim {}", u.radical().dim()))?;
    }
    Ok(format!("{} unipotent algebras give the augmentation ideal; torus(1), torus(2) semisimple", unipotent.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Heller dimension law", heller_dims),
        ("sl(2)_s golden values", sl2_s_golden),
        ("degree-syzygy identity", syz3_identity),
        ("degrees of free and Omega^2(K)", free_and_omega2_degrees),
        ("degree duality", duality),
        ("constant rank", constant_rank),
        ("pencil graph connectivity", pencil_connectivity),
        ("classifier roundtrip", classifier_roundtrip),
        ("Jacobson formula", jacobson),
        ("radical of U_0", radicals),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
