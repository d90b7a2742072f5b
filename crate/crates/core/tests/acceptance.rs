//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when
//! any criterion fails.

use hcmu::angulation::{Arc, Color, Dart, MixedAngulation};
use hcmu::balance::{
    connection_matrix, rank_int, solve_linear, solve_tree, weight_space_dimension,
};
use hcmu::builder::{brute_force_trees, build_one_cone, build_surface};
use hcmu::constraints::{check_existence, check_refined, AngleVector, Case, Existence};
use hcmu::dataset::{census, cone_points, realized_angle_vector, DataSet, PointKind};
use hcmu::deform::{circles_at_level, split, twist, twist_is_trivial, DeformError};
use hcmu::io::{export_dot, export_profile_csv, load_path, save};
use hcmu::metric::{
    football_area_closed, football_area_numeric, warped_profile, Hcmu, CUSP_LEVEL_MAX,
};
use hcmu::moduli::{dimension, dimension_crosscheck, dimension_refined};
use hcmu::Q;
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> DataSet {
    load_path(&root().join("fixtures").join(name)).expect("fixture loads")
}

fn fixture_names() -> Vec<&'static str> {
    vec!["calabi.json", "two_level.json", "cusp.json"]
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// Sorted (kind, angle) pairs of the non-smooth points.
fn cone_signature(d: &DataSet) -> Vec<(u8, Q)> {
    let mut v: Vec<(u8, Q)> = cone_points(d)
        .into_iter()
        .filter(|c| !c.smooth)
        .map(|c| {
            let k = match c.kind {
                PointKind::Maximum => 0,
                PointKind::Minimum => 1,
                PointKind::Saddle => 2,
            };
            (k, c.angle)
        })
        .collect();
    v.sort();
    v
}

fn smooth_count(d: &DataSet) -> usize {
    cone_points(d).iter().filter(|c| c.smooth).count()
}

fn total_weight(d: &DataSet) -> Q {
    d.weights().iter().sum()
}

// ---------------------------------------------------------------- 1

fn calabi_fixture() -> Outcome {
    let d = fixture("calabi.json");
    let c = census(&d).map_err(|e| e.to_string())?;
    let got = (c.p, c.q, c.m_plus, c.m_minus, c.a, c.b);
    ensure(got == (3, 2, 3, 2, 5, 6), || format!("census {got:?}"))?;
    ensure(d.ratio() == q(2, 3), || format!("ratio {}", d.ratio()))?;
    ensure(d.weights().iter().all(|w| *w == q(1, 2)), || "weights".into())?;
    // Each vertex: ratio-scaled weight sum equals its smooth angle 1.
    let a = d.angulation();
    for v in 0..a.num_vertices() {
        let sum: Q = a.rotation(v).iter().map(|x| d.weight(x.arc)).sum();
        let scaled = match a.color(v) {
            Color::Black => sum,
            Color::White => sum * d.ratio(),
        };
        ensure(scaled == Q::one(), || format!("residual at vertex {v}: {}", scaled - Q::one()))?;
    }
    let saddles: Vec<Q> = cone_points(&d)
        .into_iter()
        .filter(|c| c.kind == PointKind::Saddle)
        .map(|c| c.angle)
        .collect();
    ensure(saddles == vec![Q::from_integer(2); 3], || format!("saddles {saddles:?}"))?;
    Ok("census (3,2,3,2,5,6), R = 2/3, zero residuals, three saddles of angle 2".into())
}

// ---------------------------------------------------------------- 2

/// Existence straight from the angle constraints, with every
/// integer entry as a saddle.
fn oracle(genus: u32, entries: &[Q]) -> Existence {
    let g = genus as i64;
    let n = entries.len() as i64;
    let ints: Vec<Q> = entries.iter().filter(|x| x.is_integer() && **x > Q::one()).copied().collect();
    let zeros = entries.iter().filter(|x| x.is_zero()).count() as i64;
    let others: Vec<Q> = entries
        .iter()
        .filter(|x| !x.is_integer())
        .copied()
        .collect();
    let sum: Q = ints.iter().sum();
    let sum = sum.to_integer();
    let m0 = sum - (2 * g - 2 + n);
    let a0 = sum - ints.len() as i64 - (2 * g - 2);
    let football = ints.is_empty();
    let yes = |c: Case| Existence::Nonempty(if football { Case::Football } else { c });
    if zeros > 0 {
        return if a0 > zeros && m0 >= 0 { yes(Case::B) } else { Existence::Empty };
    }
    if a0 >= 3 && m0 >= 0 {
        yes(Case::A1)
    } else if a0 == 2 && m0 == 1 {
        yes(Case::A2)
    } else if a0 == 2 && m0 == 0 && others.len() == 2 && others[0] != others[1] {
        yes(Case::A3)
    } else {
        Existence::Empty
    }
}

/// Non-increasing integer partitions of at most `max_sum` into parts from
/// {0, 2, 3, ...}, with at most `max_len` parts and at most 3 zeros.
fn integer_vectors(max_sum: i64, max_len: usize) -> Vec<Vec<i64>> {
    fn rec(rest: i64, cap: i64, cur: &mut Vec<i64>, max_len: usize, out: &mut Vec<Vec<i64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        let mut part = cap.min(rest);
        while part >= 0 {
            if part != 1 {
                let zeros = cur.iter().filter(|&&x| x == 0).count();
                if part != 0 || zeros < 3 {
                    cur.push(part);
                    rec(rest - part, part, cur, max_len, out);
                    cur.pop();
                }
            }
            part -= 1;
        }
    }
    let mut out = Vec::new();
    rec(max_sum, max_sum, &mut Vec::new(), max_len, &mut out);
    out
}

fn witness(genus: u32, alpha: &AngleVector) -> Result<(), String> {
    let z = alpha.all_integers();
    let d = build_surface(genus, alpha, &z).map_err(|e| format!("build {e}"))?;
    ensure(d.genus() == genus, || "genus".into())?;
    let (got, t) = realized_angle_vector(&d);
    let mut want = alpha.entries().to_vec();
    let mut have = got.entries().to_vec();
    want.sort();
    have.sort();
    ensure(want == have, || format!("realized {have:?}"))?;
    ensure(t.saddles.len() == z.len(), || "saddle count".into())?;
    if !d.ratio().is_zero() {
        let dim = weight_space_dimension(&d).map_err(|e| e.to_string())?;
        ensure(dim == 2 * genus as usize + z.len() - 1, || "weight space".into())?;
    }
    dimension_crosscheck(&d).map_err(|e| e.to_string())?;
    Ok(())
}

fn truth_table() -> Outcome {
    let mut checked = 0;
    let mut built = 0;
    let vectors = integer_vectors(12, 8);
    for genus in 0..=3u32 {
        for v in &vectors {
            let alpha = AngleVector::from_integers(v).map_err(|e| e.to_string())?;
            let got = check_existence(genus, &alpha).map_err(|e| e.to_string())?;
            let want = oracle(genus, alpha.entries());
            ensure(got == want, || format!("g={genus} {v:?}: {got} vs {want}"))?;
            // Existence must be witnessed by some saddle set.
            let ints: Vec<usize> = alpha.all_integers().into_iter().collect();
            let any = (1u32..(1 << ints.len())).any(|mask| {
                let z: BTreeSet<usize> =
                    (0..ints.len()).filter(|b| mask >> b & 1 == 1).map(|b| ints[b]).collect();
                check_refined(genus, &alpha, &z).is_ok_and(|e| e.is_nonempty())
            });
            if !ints.is_empty() {
                ensure(any == got.is_nonempty(), || {
                    format!("g={genus} {v:?}: refined search disagrees")
                })?;
            }
            checked += 1;
            if got.is_nonempty() && !ints.is_empty() {
                witness(genus, &alpha).map_err(|e| format!("g={genus} {v:?}: {e}"))?;
                built += 1;
            }
        }
    }
    // Named cases.
    let h = q(1, 2);
    let named: Vec<(u32, Vec<Q>, Existence)> = vec![
        (0, vec![h], Existence::Nonempty(Case::Football)),
        (0, vec![h, q(1, 3)], Existence::Nonempty(Case::Football)),
        (0, vec![h, h], Existence::Empty),
        (0, vec![h, q(1, 3), q(1, 5)], Existence::Empty),
        (1, vec![h], Existence::Empty),
        (0, vec![Q::zero()], Existence::Nonempty(Case::Football)),
        (0, vec![Q::from_integer(2), h, q(1, 3)], Existence::Nonempty(Case::A1)),
        (0, vec![Q::from_integer(2), h, q(1, 3), q(1, 5), q(1, 7)], Existence::Empty),
        (3, vec![Q::from_integer(3), Q::from_integer(3)], Existence::Empty),
        (3, vec![Q::from_integer(4), Q::from_integer(5), h, h, h, h, h, h], Existence::Empty),
        (1, vec![Q::from_integer(3), h], Existence::Nonempty(Case::A2)),
        (1, vec![Q::from_integer(3), h, q(1, 3)], Existence::Nonempty(Case::A3)),
        (1, vec![Q::from_integer(3), h, h], Existence::Empty),
    ];
    for (genus, entries, want) in named {
        let alpha = AngleVector::new(entries.clone()).map_err(|e| e.to_string())?;
        let got = check_existence(genus, &alpha).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("named g={genus} {entries:?}: {got}"))?;
        ensure(got == oracle(genus, alpha.entries()), || "oracle".into())?;
        if got.is_nonempty() && alpha.k() > 0 {
            witness(genus, &alpha).map_err(|e| format!("named {entries:?}: {e}"))?;
            built += 1;
        }
        checked += 1;
    }
    Ok(format!("{checked} prescriptions agree with the constraint oracle, {built} witnessed by builders"))
}

// ---------------------------------------------------------------- 3

fn one_cone_output(genus: u32, p: u64, qq: u64) -> Result<(), String> {
    let d = build_one_cone(genus, p, qq).map_err(|e| e.to_string())?;
    let c = census(&d).map_err(|e| e.to_string())?;
    let alpha = (p + qq + 2 * genus as u64 - 1) as i64;
    ensure(
        (c.p, c.q, c.m_plus, c.m_minus) == (p as i64, qq as i64, p as i64, qq as i64),
        || format!("census {c:?}"),
    )?;
    ensure(
        cone_signature(&d) == vec![(2, Q::from_integer(alpha))],
        || "single saddle".into(),
    )?;
    ensure(d.genus() == genus, || "genus".into())?;
    Ok(())
}

fn one_cone() -> Outcome {
    let mut cases = 0;
    for total in 3..=11u64 {
        for qq in 1..total {
            let p = total - qq;
            if p <= qq {
                continue;
            }
            let admissible = qq == 1 || p % qq != 0;
            let built = build_one_cone(0, p, qq);
            ensure(built.is_ok() == admissible, || format!("(0,{p},{qq}) builder {:?}", built.as_ref().err()))?;
            if admissible {
                one_cone_output(0, p, qq).map_err(|e| format!("(0,{p},{qq}) {e}"))?;
            }
            let trees = brute_force_trees(p, qq).map_err(|e| e.to_string())?;
            ensure(!trees.is_empty() == admissible, || format!("({p},{qq}) brute force"))?;
            cases += 1;
        }
    }
    for genus in 1..=2u32 {
        for total in 3..=8u64 {
            for qq in 1..total {
                let p = total - qq;
                if p > qq {
                    one_cone_output(genus, p, qq).map_err(|e| format!("({genus},{p},{qq}) {e}"))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} (g, p, q) cases"))
}

// ---------------------------------------------------------------- 4

fn random_angulation(rng: &mut StdRng) -> Option<MixedAngulation> {
    let n = rng.gen_range(2..=12);
    let mut colors = vec![Color::Black];
    let mut arcs = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        colors.push(colors[u].opposite());
        arcs.push((u, v));
    }
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if colors[u] != colors[v] {
            arcs.push((u, v));
        }
    }
    let arcs: Vec<Arc> = arcs
        .into_iter()
        .map(|(u, v)| match colors[u] {
            Color::Black => Arc { black: u, white: v },
            Color::White => Arc { black: v, white: u },
        })
        .collect();
    let mut rotations = vec![Vec::new(); n];
    for (e, arc) in arcs.iter().enumerate() {
        rotations[arc.black].push(Dart::b(e));
        rotations[arc.white].push(Dart::w(e));
    }
    for r in rotations.iter_mut() {
        for i in (1..r.len()).rev() {
            r.swap(i, rng.gen_range(0..=i));
        }
    }
    MixedAngulation::build(colors, arcs, rotations).ok()
}

fn linear_algebra() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20240611);
    let mut tried = 0;
    let mut done = 0;
    while done < 200 {
        tried += 1;
        ensure(tried < 20000, || "could not sample angulations".into())?;
        let Some(a) = random_angulation(&mut rng) else { continue };
        let rank = rank_int(&connection_matrix(&a).rows);
        ensure(rank == a.num_vertices() - 1, || format!("rank {rank} on {} vertices", a.num_vertices()))?;
        done += 1;
    }
    // Tree peeling against the full linear system.
    let mut trees = 0;
    for (p, qq) in [(3u64, 1u64), (5, 2), (7, 3), (5, 3), (7, 2), (8, 3), (7, 4)] {
        for (tree, weights) in brute_force_trees(p, qq).map_err(|e| e.to_string())? {
            let peeled = solve_tree(&tree, p as i64, qq as i64).map_err(|e| e.to_string())?;
            ensure(peeled == weights, || "peeling differs from enumeration".into())?;
            ensure(
                peeled.iter().all(|&w| w >= 1 && w <= qq as i64),
                || format!("weights {peeled:?} outside 1..{qq}"),
            )?;
            let b = tree.edges.len();
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for x in 0..tree.blacks {
                rows.push((0..b).map(|e| if tree.edges[e].0 == x { Q::one() } else { Q::zero() }).collect());
                rhs.push(Q::from_integer(qq as i64));
            }
            for y in 0..tree.whites {
                rows.push((0..b).map(|e| if tree.edges[e].1 == y { Q::one() } else { Q::zero() }).collect());
                rhs.push(Q::from_integer(p as i64));
            }
            let space = solve_linear(&rows, &rhs).map_err(|e| e.to_string())?;
            ensure(space.kernel.is_empty(), || "tree solution not unique".into())?;
            let exact: Vec<Q> = peeled.iter().map(|&w| Q::from_integer(w)).collect();
            ensure(space.particular == exact, || "kernel solve disagrees".into())?;
            trees += 1;
        }
    }
    ensure(brute_force_trees(4, 2).map_err(|e| e.to_string())?.is_empty(), || "(4,2) tree".into())?;
    // Builder outputs: weight space dimension.
    let mut outputs = 0;
    for (genus, v) in [(0u32, vec![2i64, 2, 2]), (1, vec![4]), (1, vec![3, 2]), (2, vec![6]), (2, vec![4, 3, 2])] {
        let alpha = AngleVector::from_integers(&v).map_err(|e| e.to_string())?;
        let d = build_surface(genus, &alpha, &alpha.all_integers()).map_err(|e| e.to_string())?;
        let dim = weight_space_dimension(&d).map_err(|e| e.to_string())?;
        ensure(dim == 2 * genus as usize + v.len() - 1, || format!("{v:?}: {dim}"))?;
        outputs += 1;
    }
    for (genus, p, qq) in [(0u32, 7u64, 3u64), (1, 2, 1), (2, 6, 2), (1, 4, 3)] {
        let d = build_one_cone(genus, p, qq).map_err(|e| e.to_string())?;
        let dim = weight_space_dimension(&d).map_err(|e| e.to_string())?;
        ensure(dim == 2 * genus as usize, || format!("one-cone {genus},{p},{qq}: {dim}"))?;
        outputs += 1;
    }
    Ok(format!("rank a-1 on 200 random angulations, {trees} peeled trees unique, {outputs} builder outputs"))
}

// ---------------------------------------------------------------- 5

fn dimension_checks() -> Outcome {
    let mut count = 0;
    for name in fixture_names() {
        dimension_crosscheck(&fixture(name)).map_err(|e| format!("{name}: {e}"))?;
        count += 1;
    }
    let calabi = dimension_crosscheck(&fixture("calabi.json")).map_err(|e| e.to_string())?;
    ensure(calabi == 6, || format!("Calabi {calabi}"))?;
    let mut outputs = Vec::new();
    for (genus, v, z) in [
        (0u32, vec![2i64, 3], vec![0usize]),
        (0, vec![2, 3], vec![0, 1]),
        (0, vec![3, 0], vec![0]),
        (1, vec![4, 0], vec![0]),
        (1, vec![3, 2], vec![0, 1]),
        (2, vec![5, 3], vec![0]),
    ] {
        let alpha = AngleVector::from_integers(&v).map_err(|e| e.to_string())?;
        let z: BTreeSet<usize> = z.into_iter().collect();
        outputs.push(build_surface(genus, &alpha, &z).map_err(|e| format!("{v:?} {e}"))?);
    }
    for (genus, p, qq) in [(0u32, 7u64, 3u64), (1, 2, 1), (2, 6, 2)] {
        outputs.push(build_one_cone(genus, p, qq).map_err(|e| e.to_string())?);
    }
    let base = outputs[0].clone();
    let x = (0..base.angulation().num_vertices())
        .find(|&v| base.vertex_angle(v) == Q::from_integer(3))
        .ok_or("no vertex of angle 3")?;
    outputs.push(split(&base, x, q(1, 2), q(1, 3)).map_err(|e| e.to_string())?);
    outputs.push(
        twist(&fixture("two_level.json"), q(1, 2), 0, q(1, 8)).map_err(|e| e.to_string())?,
    );
    for d in &outputs {
        dimension_crosscheck(d).map_err(|e| e.to_string())?;
        count += 1;
    }
    let footballs = [vec![q(1, 2)], vec![q(1, 2), q(1, 3)], vec![Q::zero()], vec![q(5, 2), q(3, 2)]];
    for f in footballs {
        let alpha = AngleVector::new(f.clone()).map_err(|e| e.to_string())?;
        let dim = dimension(0, &alpha).map_err(|e| e.to_string())?;
        ensure(dim == Some(1), || format!("football {f:?}: {dim:?}"))?;
    }
    let cusp = AngleVector::from_integers(&[4, 0]).map_err(|e| e.to_string())?;
    ensure(dimension(1, &cusp).map_err(|e| e.to_string())? == Some(4), || "(1,(4,0))".into())?;
    ensure(
        dimension_refined(0, &AngleVector::from_integers(&[2, 3]).unwrap(), &[0].into()).unwrap()
            == Some(2),
        || "refined (2,3)".into(),
    )?;
    Ok(format!("{count} data sets cross-checked, Calabi 6, footballs 1, (1,(4,0)) 4"))
}

// ---------------------------------------------------------------- 6

fn dp_dk(m: &Hcmu, k: f64) -> f64 {
    // d/dK of -(K-K0)(K-K1)(K+K0+K1)
    let (a, b, c) = (k - m.k0, k - m.k1, k + m.k0 + m.k1);
    -(b * c + a * c + a * b)
}

/// `dK/dv` from the substitution, independent of the warp formula.
fn slope_from_angle(m: &Hcmu, t: f64) -> f64 {
    -(m.k0 - m.k1) * (2.0 * t).sin() / m.arclength_density(t)
}

fn numerics() -> Outcome {
    let ratios = [Q::zero(), q(1, 4), q(1, 3), q(2, 3), q(9, 10)];
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    for k0 in [0.5, 1.0, 2.0, 5.0] {
        for r in ratios {
            let m = Hcmu::new(k0, r).map_err(|e| e.to_string())?;
            // h'(0) from h / v just below the top.
            let s = 1e-10;
            let top = m.warp_at_level(s) / m.distance_from_top(s).map_err(|e| e.to_string())?;
            // h'(l) from dh/dt over dv/dt just above the bottom.
            let t = 1e-6;
            let dt = 1e-8;
            let dh = (m.warp_at_angle(t + dt) - m.warp_at_angle(t - dt)) / (2.0 * dt);
            let bottom = -dh / m.arclength_density(t);
            let r_f = r.to_f64().unwrap();
            ensure((top - 1.0).abs() <= 1e-8, || format!("h'(0) = {top} at ({k0}, {r})"))?;
            ensure((bottom + r_f).abs() <= 1e-6, || format!("h'(l) = {bottom} at ({k0}, {r})"))?;
            worst.0 = worst.0.max((top - 1.0).abs());
            worst.1 = worst.1.max((bottom + r_f).abs());
            // ODE residuals at every sample.
            let profile = warped_profile(k0, r, 64).map_err(|e| e.to_string())?;
            let tol = 1e-8 * k0.powi(3);
            for smp in &profile.samples {
                let t = Hcmu::angle_of_level(smp.s);
                if t <= 1e-6 || t >= std::f64::consts::FRAC_PI_2 - 1e-6 {
                    continue;
                }
                let kp = slope_from_angle(&m, t);
                let first = (3.0 * kp * kp - m.cubic(smp.k)).abs();
                let dt = 1e-5 * t.min(1.0);
                let kpp = -(slope_from_angle(&m, t + dt) - slope_from_angle(&m, t - dt))
                    / (2.0 * dt)
                    / m.arclength_density(t);
                let second = (kpp - dp_dk(&m, smp.k) / 6.0).abs();
                let warp = (kp - m.c_bar() * smp.h).abs();
                let res = first.max(second).max(warp);
                worst.2 = worst.2.max(res / k0.powi(3));
                ensure(res <= tol, || format!("residual {res:e} at ({k0}, {r}, s={})", smp.s))?;
            }
            if r.is_zero() {
                for smp in &profile.samples {
                    let dev = (hcmu::metric::cusp_curvature(k0, smp.v) - smp.k).abs();
                    ensure(dev <= 1e-7, || format!("cusp deviation {dev:e} at v={}", smp.v))?;
                }
                ensure(profile.samples.last().unwrap().s == CUSP_LEVEL_MAX, || "cusp end".into())?;
            } else {
                rk4_oracle(&m, &profile)?;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(7);
    let mut area_err = 0.0f64;
    for _ in 0..20 {
        let k0 = rng.gen_range(0.2..6.0);
        let den = rng.gen_range(2..40);
        let r = q(rng.gen_range(0..den), den);
        let alpha = rng.gen_range(0.1..8.0);
        let closed = football_area_closed(k0, r.to_f64().unwrap(), alpha);
        let num = football_area_numeric(k0, r, alpha).map_err(|e| e.to_string())?;
        let rel = (closed - num).abs() / closed;
        area_err = area_err.max(rel);
        ensure(rel <= 1e-6, || format!("football area {closed} vs {num}"))?;
    }
    Ok(format!(
        "max |h'(0)-1| {:.1e}, |h'(l)+R| {:.1e}, residual/K0^3 {:.1e}, area rel {:.1e}",
        worst.0, worst.1, worst.2, area_err
    ))
}

/// Integrates `K'' = P'(K)/6` from the top with RK4 and compares the
/// curvature at each sampled arclength.
fn rk4_oracle(m: &Hcmu, profile: &hcmu::metric::Profile) -> Result<(), String> {
    // Start slightly below the top using the series K = K0 + c v^2 / 2.
    let c = m.c_bar();
    let v0 = 1e-4;
    let mut state = (m.k0 + 0.5 * c * v0 * v0, c * v0);
    let mut v = v0;
    let f = |k: f64| dp_dk(m, k) / 6.0;
    let h: f64 = 1e-4;
    for smp in profile.samples.iter().skip(1) {
        if smp.s > 0.95 {
            break;
        }
        while v < smp.v {
            let step = h.min(smp.v - v);
            let (k, kp) = state;
            let k1 = (kp, f(k));
            let k2 = (kp + 0.5 * step * k1.1, f(k + 0.5 * step * k1.0));
            let k3 = (kp + 0.5 * step * k2.1, f(k + 0.5 * step * k2.0));
            let k4 = (kp + step * k3.1, f(k + step * k3.0));
            state = (
                k + step / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
                kp + step / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
            );
            v += step;
        }
        let dev = (state.0 - smp.k).abs();
        ensure(dev <= 1e-6 * m.k0.max(1.0), || format!("RK4 deviation {dev:e} at v={}", smp.v))?;
    }
    Ok(())
}

// ---------------------------------------------------------------- 7

fn deformations() -> Outcome {
    let two = fixture("two_level.json");
    let calabi = fixture("calabi.json");
    for (name, d, c) in [("two-level", &two, q(1, 2)), ("Calabi", &calabi, q(1, 4))] {
        let circles = circles_at_level(d, c).map_err(|e| e.to_string())?;
        for (i, circle) in circles.iter().enumerate() {
            for psi in [Q::zero(), circle.circumference] {
                let t = twist(d, c, i, psi).map_err(|e| e.to_string())?;
                ensure(t.is_isomorphic(d), || format!("{name} circle {i} twist {psi}"))?;
            }
        }
    }
    for c in [q(1, 4), q(3, 4)] {
        let n = circles_at_level(&calabi, c).map_err(|e| e.to_string())?.len();
        for i in 0..n {
            ensure(twist_is_trivial(&calabi, c, i).unwrap(), || format!("Calabi circle {i} at {c}"))?;
        }
    }
    let mut generic = 0;
    for k in 1..40 {
        let psi = q(k, 40);
        match twist(&two, q(1, 2), 0, psi) {
            Ok(t) => {
                ensure(t.genus() == two.genus(), || "genus".into())?;
                ensure(t.k0() == two.k0() && t.ratio() == two.ratio(), || "k0/R".into())?;
                ensure(cone_signature(&t) == cone_signature(&two), || "cone angles".into())?;
                ensure(total_weight(&t) == total_weight(&two), || "total weight".into())?;
                let mut l1 = t.levels().to_vec();
                let mut l2 = two.levels().to_vec();
                l1.sort();
                l2.sort();
                ensure(l1 == l2, || "levels".into())?;
                ensure(
                    load_path_str(&save(&t)).is_ok(),
                    || "twisted data set does not reload".into(),
                )?;
                generic += 1;
            }
            Err(DeformError::NonGeneric { .. }) => {}
            Err(e) => return Err(format!("twist {psi}: {e}")),
        }
    }
    ensure(generic >= 30, || format!("only {generic} generic twists"))?;

    let mut splits = 0;
    for (genus, v, z) in [
        (0u32, vec![2i64, 3], vec![0usize]),
        (0, vec![4, 2], vec![1]),
        (1, vec![4, 2], vec![0]),
        (0, vec![2, 2, 3], vec![0, 1]),
    ] {
        let alpha = AngleVector::from_integers(&v).map_err(|e| e.to_string())?;
        let z: BTreeSet<usize> = z.into_iter().collect();
        let d = build_surface(genus, &alpha, &z).map_err(|e| e.to_string())?;
        let before = dimension_crosscheck(&d).map_err(|e| e.to_string())?;
        for x in 0..d.angulation().num_vertices() {
            let angle = d.vertex_angle(x);
            if !angle.is_integer() || angle <= Q::one() {
                continue;
            }
            if d.angulation().color(x) == Color::White && d.ratio().is_zero() {
                continue;
            }
            let s = (1..7)
                .find_map(|k| split(&d, x, q(k, 7), q(2, 5)).ok())
                .ok_or_else(|| format!("{v:?}: no offset splits vertex {x}"))?;
            ensure(s.genus() == d.genus(), || "split genus".into())?;
            let alpha_n = angle.to_integer() as usize;
            ensure(smooth_count(&s) == smooth_count(&d) + alpha_n, || "smooth points".into())?;
            let mut kept = cone_signature(&d);
            let removed = kept
                .iter()
                .position(|&(k, a)| k < 2 && a == angle)
                .ok_or("split point missing")?;
            kept.remove(removed);
            kept.push((2, angle));
            kept.sort();
            ensure(cone_signature(&s) == kept, || format!("{v:?}: cone points after split"))?;
            let after = dimension_crosscheck(&s).map_err(|e| e.to_string())?;
            let (ra, rt) = realized_angle_vector(&s);
            let formula = dimension_refined(s.genus(), &ra, &rt.saddles).map_err(|e| e.to_string())?;
            ensure(after == before + 2 && formula == Some(after), || {
                format!("{v:?}: dimension {before} -> {after}")
            })?;
            splits += 1;
        }
    }
    ensure(splits >= 4, || format!("only {splits} splits"))?;
    Ok(format!("identity twists, {generic} generic twists, {splits} splits"))
}

fn load_path_str(text: &str) -> Result<DataSet, String> {
    hcmu::io::load_str(text).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------- 8

fn golden(name: &str) -> String {
    std::fs::read_to_string(root().join("tests/golden").join(name)).expect("golden file")
}

fn serialization() -> Outcome {
    for name in fixture_names() {
        let path = root().join("fixtures").join(name);
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let d = load_path(Path::new(&path)).map_err(|e| e.to_string())?;
        ensure(save(&d) == text, || format!("{name} is not byte-identical"))?;
    }
    for (fx, g) in [
        ("calabi.json", "calabi.dot"),
        ("two_level.json", "two_level.dot"),
        ("cusp.json", "cusp.dot"),
    ] {
        ensure(export_dot(&fixture(fx)) == golden(g), || format!("{g} drifted"))?;
    }
    let star = build_one_cone(0, 5, 1).map_err(|e| e.to_string())?;
    ensure(export_dot(&star) == golden("star_5_1.dot"), || "star_5_1.dot drifted".into())?;
    for (k0, r, g) in [(1.0, q(2, 3), "profile_k1_r2-3.csv"), (2.0, Q::zero(), "profile_k2_cusp.csv")] {
        let p = warped_profile(k0, r, 16).map_err(|e| e.to_string())?;
        ensure(export_profile_csv(&p) == golden(g), || format!("{g} drifted"))?;
    }
    Ok("fixtures round-trip byte for byte, DOT and CSV goldens stable".into())
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("Calabi golden fixture", calabi_fixture),
        ("angle-constraint truth table", truth_table),
        ("one-cone classification", one_cone),
        ("linear algebra", linear_algebra),
        ("dimension cross-check", dimension_checks),
        ("numerics", numerics),
        ("deformation invariance", deformations),
        ("serialization", serialization),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panic: {msg}"))
            });
        match result {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
