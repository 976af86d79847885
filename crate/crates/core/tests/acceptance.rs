//! One line per acceptance criterion. Run with
//! `cargo test -p garland-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use garland_core::checks::{
    antisymmetry_defect, check_graph_laws, goldman_defect, jacobi_sum, leibniz_defect,
    section13_walkthrough,
};
use garland_core::fgroup::{
    conjugacy_class, conjugator, power_conjugation_solutions, primitive_root, PowerSolutions,
};
use garland_core::garlands::{a_op, loop_class, min_intersection_number, star};
use garland_core::oracle::{brute_centralizer, brute_conjugator_search, brute_power_solve};
use garland_core::sampling::Sampler;
use garland_core::signcalc::verify_parity_identities;
use garland_core::{
    CircleRelabeling, GarlandElement, Rational, RibbonSurface, SearchBounds, TreeGarlandClass, Word,
};
use rand::Rng;

type Outcome = Result<(), String>;

/// Name, check, time limit.
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn surface(name: &str) -> RibbonSurface {
    RibbonSurface::builtin(name).expect("builtin")
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn section13_end_to_end() -> Outcome {
    let r = section13_walkthrough().map_err(|e| e.to_string())?;
    ensure(r.passed(), || r.to_string())
}

fn known_minimal_intersections() -> Outcome {
    let s = surface("torus1");
    for (a, b, want) in [("a", "b", 1), ("ab", "aB", 2)] {
        let m = min_intersection_number(&s, &w(a), &w(b)).map_err(|e| e.to_string())?;
        let hom = s
            .homological_pairing(&conjugacy_class(&w(a)), &conjugacy_class(&w(b)))
            .abs();
        ensure(m.value == want && hom == want, || {
            format!(
                "({a},{b}): min-int {} homological bound {hom}, expected {want}",
                m.value
            )
        })?;
    }
    Ok(())
}

fn homology_consistency() -> Outcome {
    let mut smp = Sampler::new(3);
    for name in ["torus1", "pants"] {
        let s = surface(name);
        for _ in 0..100 {
            let (x, y) = smp.admissible_pair(2, 8);
            let (cx, cy) = (conjugacy_class(&x), conjugacy_class(&y));
            let geo: i64 = s
                .linked_pairs(&cx, &cy)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|t| t.geom_sign as i64)
                .sum();
            let hom = s.homological_pairing(&cx, &cy);
            ensure(geo == hom, || {
                format!("{name} ({x},{y}): crossings sum {geo}, homology {hom}")
            })?;
        }
    }
    Ok(())
}

fn antisymmetry() -> Outcome {
    let mut smp = Sampler::new(4);
    let s = surface("torus1");
    for i in 0..100 {
        let s = if i % 2 == 0 {
            &s
        } else {
            &surface("section13")
        };
        let (x, y) = smp.admissible_pair(2, 6);
        let d = antisymmetry_defect(&loop_class(&x).unwrap(), &loop_class(&y).unwrap(), s)
            .map_err(|e| e.to_string())?;
        ensure(d.is_zero(), || format!("({x},{y}): {d}"))?;
    }
    Ok(())
}

fn jacobi() -> Outcome {
    let mut smp = Sampler::new(5);
    let s = surface("torus1");
    for _ in 0..25 {
        let v = smp.admissible(3, 2, 5);
        let e: Vec<GarlandElement> = v.iter().map(|x| loop_class(x).unwrap()).collect();
        let d = jacobi_sum(&e[0], &e[1], &e[2], &s).map_err(|e| e.to_string())?;
        ensure(d.is_zero(), || format!("({},{},{}): {d}", v[0], v[1], v[2]))?;
    }
    Ok(())
}

fn leibniz() -> Outcome {
    let mut smp = Sampler::new(6);
    let s = surface("torus1");
    for _ in 0..25 {
        let v = smp.admissible(3, 2, 5);
        let e: Vec<GarlandElement> = v.iter().map(|x| loop_class(x).unwrap()).collect();
        let d = leibniz_defect(&e[0], &e[1], &e[2], &s).map_err(|e| e.to_string())?;
        ensure(d.is_zero(), || format!("({},{},{}): {d}", v[0], v[1], v[2]))?;
    }
    Ok(())
}

fn random_element(smp: &mut Sampler) -> GarlandElement {
    let mut e = GarlandElement::zero();
    let n = smp.rng().gen_range(1..=2);
    for _ in 0..n {
        let key = if smp.rng().gen_bool(0.5) {
            TreeGarlandClass::circle(smp.cyclic_word(2, 4)).unwrap()
        } else {
            TreeGarlandClass::pair(smp.cyclic_word(2, 4), smp.cyclic_word(2, 4)).unwrap()
        };
        let num = smp.rng().gen_range(1..=5) * if smp.rng().gen_bool(0.5) { 1 } else { -1 };
        let den = smp.rng().gen_range(1..=4);
        e.add(key, Rational::new(num, den)).unwrap();
    }
    e
}

fn star_algebra() -> Outcome {
    let mut smp = Sampler::new(7);
    for _ in 0..50 {
        let (a, b, c) = (
            random_element(&mut smp),
            random_element(&mut smp),
            random_element(&mut smp),
        );
        let err = |e: garland_core::Error| e.to_string();
        let ab = star(&a, &b).map_err(err)?;
        ensure(ab.equals(&star(&b, &a).map_err(err)?).map_err(err)?, || {
            format!("commutativity: {a} {b}")
        })?;
        let left = star(&ab, &c).map_err(err)?;
        let right = star(&a, &star(&b, &c).map_err(err)?).map_err(err)?;
        ensure(left.equals(&right).map_err(err)?, || {
            format!("associativity: {a} {b} {c}")
        })?;
    }
    Ok(())
}

fn goldman_relation() -> Outcome {
    let mut smp = Sampler::new(8);
    for i in 0..100 {
        let s = surface(["torus1", "pants", "section13"][i % 3]);
        let (x, y) = smp.admissible_pair(2, 6);
        let d = goldman_defect(&s, &x, &y).map_err(|e| e.to_string())?;
        ensure(d.is_zero(), || format!("({x},{y}): {d}"))?;
    }
    Ok(())
}

fn sign_calculus() -> Outcome {
    let r = verify_parity_identities();
    ensure(r.passed(), || r.to_string())
}

fn graph_calculus() -> Outcome {
    let mut smp = Sampler::new(10);
    for _ in 0..100 {
        let (a, b, c) = (smp.graph(4), smp.graph(4), smp.graph(4));
        let r = check_graph_laws(&a, &b, &c).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.failures.join("; "))?;
    }
    Ok(())
}

fn is_power_of(x: &Word, root: &Word, bound: i64) -> bool {
    (-bound..=bound).any(|k| &root.pow(k) == x)
}

fn fgroup_vs_oracle() -> Outcome {
    let mut smp = Sampler::new(11);
    let b = SearchBounds::new(12, 12);
    let err = |e: garland_core::Error| e.to_string();
    for i in 0..500 {
        let u = smp.cyclic_word(2, 8);
        let v = match i % 3 {
            0 => smp.cyclic_word(2, 8),
            _ => {
                let g = smp.word(2, 4);
                u.conjugate_by(&g)
            }
        };
        // conjugator
        let exact = conjugator(&u, &v).map_err(err)?;
        let brute = brute_conjugator_search(&u, &v, &b);
        match (&exact, &brute) {
            (None, None) => {}
            (Some(wit), Some(c)) => {
                ensure(u.conjugate_by(&wit.base) == v, || {
                    format!("bad witness for ({u},{v})")
                })?;
                let diff = wit.base.invert().concat(c);
                ensure(is_power_of(&diff, &wit.root, 12), || {
                    format!("({u},{v}): {c} not in {} <{}>", wit.base, wit.root)
                })?;
            }
            _ => return Err(format!("({u},{v}): exact {exact:?}, brute {brute:?}")),
        }
        // primitive root: every short element commuting with u is a power of it
        let (root, e) = primitive_root(&u).map_err(err)?;
        ensure(root.pow(e as i64) == u, || format!("root of {u}"))?;
        for c in brute_centralizer(&u, &SearchBounds::new(6, 1)) {
            ensure(is_power_of(&c, &root, 6), || {
                format!("{c} commutes with {u} but is not a power of {root}")
            })?;
        }
        // power conjugation
        let t = smp.cyclic_word(2, 4);
        let z = if i % 2 == 0 {
            u.conjugate_by(&t.pow(smp.rng().gen_range(-3..=3)))
        } else {
            v.clone()
        };
        let exact = power_conjugation_solutions(&t, &u, &z).map_err(err)?;
        let brute = brute_power_solve(&t, &u, &z, &b);
        let ok = match (exact, brute) {
            (PowerSolutions::None, None) => true,
            (PowerSolutions::Unique(n), Some(m)) => n == m,
            (PowerSolutions::Unique(n), None) => n.abs() > b.max_power,
            (PowerSolutions::All, Some(0)) => true,
            _ => false,
        };
        ensure(ok, || {
            format!("({t},{u},{z}): exact {exact:?}, brute {brute:?}")
        })?;
    }
    Ok(())
}

fn swap_law() -> Outcome {
    let mut smp = Sampler::new(12);
    let s = surface("torus1");
    let err = |e: garland_core::Error| e.to_string();
    for i in 0..100 {
        let v = smp.admissible(4, 2, 5);
        // Mix one- and two-circle inputs so the relabeling is not trivial.
        let x1 = if i % 2 == 0 {
            TreeGarlandClass::circle(v[0].clone()).unwrap()
        } else {
            TreeGarlandClass::pair(v[2].clone(), v[0].clone()).unwrap()
        };
        let x2 = if i % 3 == 0 {
            TreeGarlandClass::circle(v[1].clone()).unwrap()
        } else {
            TreeGarlandClass::pair(v[1].clone(), v[3].clone()).unwrap()
        };
        let k1 = x1.nu();
        let k2 = 1;
        let lhs = a_op(k1, k2, &x1, &x2, &s).map_err(err)?;
        let mut rhs = a_op(k2, k1, &x2, &x1, &s)
            .map_err(err)?
            .relabel(&CircleRelabeling::swap_blocks(x1.nu(), x2.nu()))
            .map_err(err)?;
        rhs.add_scaled(&lhs, Rational::from(1)).map_err(err)?;
        ensure(rhs.is_zero(), || format!("{x1:?} {x2:?}: {rhs}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (
            "1 two-loop example on section13",
            section13_end_to_end,
            Duration::from_secs(1),
        ),
        (
            "2 known minimal intersections",
            known_minimal_intersections,
            Duration::from_secs(1),
        ),
        (
            "3 crossing signs match homology",
            homology_consistency,
            Duration::MAX,
        ),
        ("4 antisymmetry", antisymmetry, Duration::from_secs(10)),
        ("5 Jacobi", jacobi, Duration::from_secs(60)),
        ("6 Leibniz", leibniz, Duration::from_secs(60)),
        (
            "7 product commutative and associative",
            star_algebra,
            Duration::from_secs(10),
        ),
        (
            "8 merged bracket vs Goldman bracket",
            goldman_relation,
            Duration::from_secs(30),
        ),
        ("9 sign calculus", sign_calculus, Duration::from_secs(1)),
        ("10 graph calculus", graph_calculus, Duration::from_secs(10)),
        (
            "11 free group vs brute force",
            fgroup_vs_oracle,
            Duration::from_secs(60),
        ),
        (
            "12 swap law for the A-operation",
            swap_law,
            Duration::from_secs(10),
        ),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let verdict = match (&outcome, took <= limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (took longer than {limit:?})"),
            (Err(msg), _) => format!("FAIL: {msg}"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!(
            "criterion {name:<42} {:>9.3}s  {verdict}",
            took.as_secs_f64()
        );
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
