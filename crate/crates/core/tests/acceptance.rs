//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Reference quantities are computed here from raw complex arithmetic rather
//! than through the library's own checkers.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sicmub_core::bases::{mub_four, mub_prime, mus_check};
use sicmub_core::format::to_json_string;
use sicmub_core::geometry::{
    hesse::inflection_labels, hesse_configuration, inflection_points, kummer::kummer_reference_plane,
    kummer_configuration, quadrics::sample_curve_point, segre_configuration, segre_intersection_check,
    segre_sharing_check, segre_signature, HesseCubic, Signature,
};
use sicmub_core::heisenberg::{clifford_sqrt, zauner_rotation};
use sicmub_core::optimizer::{search, verify_fiducial, SearchConfig};
use sicmub_core::sic::{clifford_orbit_d4, eddington_mus16, equiangular_2n, sic_d3, sic_d4, sic_defect};
use sicmub_core::{ComplexVector, Tolerance, VerificationReport};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn entries(v: &ComplexVector) -> Vec<C> {
    v.entries().to_vec()
}

/// `|<u|v>|^2 / (|u|^2 |v|^2)` by direct summation.
fn overlap(u: &[C], v: &[C]) -> f64 {
    let ip: C = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
    let nu: f64 = u.iter().map(|a| a.norm_sqr()).sum();
    let nv: f64 = v.iter().map(|a| a.norm_sqr()).sum();
    ip.norm_sqr() / (nu * nv)
}

fn max_pairwise_dev(vs: &[Vec<C>], target: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            worst = worst.max((overlap(&vs[i], &vs[j]) - target).abs());
        }
    }
    worst
}

/// Sine of the Fubini-Study angle between two rays, from the 2x2 minors
/// `u_a v_b - u_b v_a` so that nearly equal rays do not suffer cancellation.
fn ray_distance(u: &[C], v: &[C]) -> f64 {
    let mut minors = 0.0;
    for a in 0..u.len() {
        for b in a + 1..u.len() {
            minors += (u[a] * v[b] - u[b] * v[a]).norm_sqr();
        }
    }
    let nu: f64 = u.iter().map(|c| c.norm_sqr()).sum();
    let nv: f64 = v.iter().map(|c| c.norm_sqr()).sum();
    (minors / (nu * nv)).sqrt()
}

fn same_rays(a: &[Vec<C>], b: &[Vec<C>], eps: f64) -> bool {
    a.len() == b.len()
        && a.iter().all(|u| b.iter().any(|v| ray_distance(u, v) <= eps))
        && b.iter().all(|v| a.iter().any(|u| ray_distance(u, v) <= eps))
}

fn omega(n: usize, k: i64) -> C {
    C::from_polar(1.0, 2.0 * std::f64::consts::PI * k.rem_euclid(n as i64) as f64 / n as f64)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in [3usize, 5, 7, 11] {
        let set = mub_prime(n).map_err(|e| e.to_string())?;
        ensure(set.len() == n + 1, format!("N={n}: {} bases", set.len()))?;
        let bases: Vec<Vec<Vec<C>>> = set.bases().iter().map(|b| b.iter().map(entries).collect()).collect();
        for (k, b1) in bases.iter().enumerate() {
            ensure(b1.len() == n, format!("N={n}: basis {k} has {} vectors", b1.len()))?;
            for b2 in &bases[k + 1..] {
                for e in b1 {
                    for f in b2 {
                        worst = worst.max((overlap(e, f) - 1.0 / n as f64).abs());
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(worst <= 1e-12, format!("max deviation {worst:e}"))?;
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("max |overlap - 1/N| = {worst:.1e}, {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let sic: Vec<Vec<C>> = sic_d3().vectors().iter().map(entries).collect();
    ensure(sic.len() == 9, "nine vectors")?;
    let dev = max_pairwise_dev(&sic, 0.25);
    ensure(dev <= 1e-13, format!("overlap deviation {dev:e}"))?;
    // Orbit of (0, 1, -1) under q^{2ij} X^i Z^j with (X v)_a = v_{a-1}.
    let fid = [C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(-1.0, 0.0)];
    let mut orbit = Vec::new();
    for i in 0..3i64 {
        for j in 0..3i64 {
            let v: Vec<C> = (0..3i64)
                .map(|a| {
                    let src = (a - i).rem_euclid(3);
                    omega(3, 2 * i * j) * omega(3, j * src) * fid[src as usize]
                })
                .collect();
            orbit.push(v);
        }
    }
    ensure(same_rays(&sic, &orbit, 1e-12), "not the orbit of (0, 1, -1)")?;
    Ok(format!("max |overlap - 1/4| = {dev:.1e}; equals orbit of (0,1,-1)"))
}

/// Rows X0..Z2 against columns D0^(0), D1^(0), D2^(0), D0^(1), ..., D2^(inf).
const HESSE_ROWS: [&str; 9] = [
    "x..x..x..x..",
    "x....x.x..x.",
    "x...x...x..x",
    ".x..x..x.x..",
    ".x.x....x.x.",
    ".x...xx....x",
    "..x..x..xx..",
    "..x.x.x...x.",
    "..xx...x...x",
];

fn criterion_3() -> Outcome {
    let h = hesse_configuration();
    ensure(h.point_labels == inflection_labels(), "row labels")?;
    let rows = h.rows_as_strings();
    for (k, (got, want)) in rows.iter().zip(HESSE_ROWS).enumerate() {
        ensure(got == want, format!("row {k}: {got} != {want}"))?;
    }
    let total = h.total_incidences();
    ensure(total == 36, format!("{total} incidences"))?;
    ensure(h.check_signature(Signature::new(9, 4, 12, 3)).pass, "signature (9_4, 12_3)")?;
    ensure(h.dual().check_signature(Signature::new(12, 3, 9, 4)).pass, "dual signature (12_3, 9_4)")?;
    Ok("table matches, 36 incidences, (9_4, 12_3) and dual (12_3, 9_4)".into())
}

fn criterion_4() -> Outcome {
    let x = (2.0 + 5f64.sqrt()).sqrt();
    let sic = sic_d4();
    let vs: Vec<Vec<C>> = sic.vectors().iter().map(entries).collect();
    ensure(vs.len() == 16, "sixteen vectors")?;
    ensure((vs[0][0].re - x).abs() < 1e-15, "x = sqrt(2 + sqrt5)")?;
    let dev = max_pairwise_dev(&vs, 0.2);
    ensure(dev <= 1e-12, format!("overlap deviation {dev:e}"))?;

    let modulus = ((x * x - 1.0).powi(2) - C::new(x + 1.0, x - 1.0).norm_sqr()).abs();
    ensure(modulus <= 1e-13, format!("modulus identity off by {modulus:e}"))?;

    let r = zauner_rotation();
    let rotated: Vec<Vec<C>> = sic.vectors().iter().map(|v| entries(&r.apply(v).unwrap())).collect();
    ensure(same_rays(&vs, &rotated, 1e-12), "R does not preserve the set")?;

    let f = clifford_sqrt();
    let f2 = &f * &f;
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let want = if i != j { 0.0 } else if i == 3 { -1.0 } else { 1.0 };
            worst = worst.max((f2[(i, j)] - C::new(want, 0.0)).norm());
        }
    }
    ensure(worst <= 1e-14, format!("F^2 off by {worst:e}"))?;

    let orbit = clifford_orbit_d4();
    let sets: Vec<Vec<Vec<C>>> = orbit.iter().map(|s| s.vectors().iter().map(entries).collect()).collect();
    for (k, s) in sets.iter().enumerate() {
        let d = max_pairwise_dev(s, 0.2);
        ensure(d <= 1e-12, format!("orbit member {k} is not a SIC ({d:e})"))?;
    }
    let mut distinct: Vec<&Vec<Vec<C>>> = Vec::new();
    for s in &sets {
        if !distinct.iter().any(|t| same_rays(s, t, 1e-9)) {
            distinct.push(s);
        }
    }
    ensure(distinct.len() == 16, format!("{} distinct SICs in the Clifford orbit", distinct.len()))?;
    Ok(format!("overlap dev {dev:.1e}, modulus {modulus:.1e}, F^2 {worst:.1e}, 16 distinct SICs"))
}

/// `sum_a p_a^2` of `v` in an orthonormal basis, by direct summation.
fn purity(v: &[C], basis: &[Vec<C>]) -> f64 {
    basis.iter().map(|e| overlap(e, v).powi(2)).sum()
}

fn criterion_5() -> Outcome {
    let set = mub_prime(3).map_err(|e| e.to_string())?;
    let bases: Vec<Vec<Vec<C>>> = set.bases().iter().map(|b| b.iter().map(entries).collect()).collect();
    let mut worst: f64 = 0.0;
    for v in sic_d3().vectors() {
        for b in &bases {
            worst = worst.max((purity(&entries(v), b) - 0.5).abs());
        }
        let report = mus_check(&v.normalized().unwrap(), &set, Tolerance::new(1e-12).unwrap()).unwrap();
        ensure(report.pass, "library MUS check disagrees")?;
    }
    ensure(worst <= 1e-12, format!("max |sum p^2 - 1/2| = {worst:e}"))?;
    Ok(format!("max |sum p^2 - 1/2| = {worst:.1e} over 9 vectors x 4 bases"))
}

fn criterion_6() -> Outcome {
    let set = mub_four();
    let bases: Vec<Vec<Vec<C>>> = set.bases().iter().map(|b| b.iter().map(entries).collect()).collect();
    let edd = eddington_mus16();
    let mut worst: f64 = 0.0;
    for v in &edd {
        for b in &bases {
            worst = worst.max((purity(&entries(v), b) - 0.4).abs());
        }
        let report = mus_check(&v.normalized().unwrap(), &set, Tolerance::new(1e-10).unwrap()).unwrap();
        ensure(report.pass, "library MUS check fails")?;
    }
    ensure(worst <= 1e-10, format!("max |sum p^2 - 2/5| = {worst:e}"))?;
    let vs: Vec<Vec<C>> = edd.iter().map(entries).collect();
    let sic_dev = max_pairwise_dev(&vs, 0.2);
    ensure(sic_dev > 1e-3, format!("SIC defect only {sic_dev:e}"))?;

    // The six displayed points on the plane (x, alpha, alpha, alpha).
    let x = C::new((2.0 + 5f64.sqrt()).sqrt(), 0.0);
    let a = C::from_polar(1.0, ((5f64.sqrt() - 1.0) / (2.0 * x.re)).acos());
    let cols = [[-a, x, a, -a], [-a, x, -a, a], [-a, a, x, -a], [-a, -a, x, a], [-a, a, -a, x], [-a, -a, a, x]];
    let r0 = entries(&kummer_reference_plane());
    for c in &cols {
        let pairing: C = r0.iter().zip(c).map(|(p, q)| p * q).sum();
        ensure(pairing.norm() < 1e-12, "displayed column not on the plane")?;
        ensure(vs.iter().any(|v| ray_distance(v, c) < 1e-12), "displayed column is not an Eddington vector")?;
    }
    let k = kummer_configuration();
    ensure(k.check_signature(Signature::new(16, 6, 16, 6)).pass, "Kummer signature")?;
    ensure(k.total_incidences() == 96, "96 incidences")?;
    Ok(format!("MUS dev {worst:.1e}, SIC defect {sic_dev:.3}, Kummer (16_6, 16_6)"))
}

fn criterion_7() -> Outcome {
    for n in [3usize, 5, 7] {
        let s = segre_configuration(n).map_err(|e| e.to_string())?;
        ensure(
            s.check_signature(Signature::new(n * (n + 1), n, n * n, n + 1)).pass,
            format!("N={n}: signature {:?}", s.signature()),
        )?;
        ensure(segre_signature(n) == Signature::new(n * (n + 1), n, n * n, n + 1), "declared symbol")?;
        // Sharing, counted directly from the matrix.
        for p in 0..s.num_points() {
            for q in p + 1..s.num_points() {
                let shared = (0..s.num_blocks()).filter(|&b| s.matrix[p][b] && s.matrix[q][b]).count();
                let want = usize::from(p / n != q / n);
                ensure(shared == want, format!("N={n}: points {p},{q} share {shared} blocks"))?;
            }
        }
        ensure(segre_sharing_check(&s, n).pass, "library sharing check")?;
    }
    let inter = segre_intersection_check(5, Tolerance::new(1e-8).unwrap()).map_err(|e| e.to_string())?;
    ensure(inter.pass, format!("N=5 intersections: {}", inter.max_deviation))?;
    Ok(format!("N=3,5,7 signatures and sharing; N=5 intersections dev {:.1e}", inter.max_deviation))
}

fn criterion_8() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in [2usize, 3, 4, 6] {
        let set = equiangular_2n(n).map_err(|e| e.to_string())?;
        let vs: Vec<Vec<C>> = set.vectors().iter().map(entries).collect();
        ensure(vs.len() == 2 * n && vs[0].len() == n, format!("n={n}: shape"))?;
        worst = worst.max(max_pairwise_dev(&vs, 1.0 / (2 * n - 1) as f64));
    }
    ensure(worst <= 1e-12, format!("max deviation {worst:e}"))?;
    Ok(format!("n=2,3,4,6: max |overlap - 1/(2n-1)| = {worst:.1e}"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    while count < 100 {
        let a = C::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let r = C::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let p = sample_curve_point(a, r).map_err(|e| e.to_string())?;
        let z = entries(p.z());
        let scale: f64 = z.iter().map(|c| c.norm_sqr()).sum::<f64>().powi(2);
        let q: C = z.iter().map(|c| c.powu(4)).sum();
        worst = worst.max(q.norm() / scale);
        count += 1;
    }
    ensure(worst <= 1e-9, format!("max relative quartic residual {worst:e}"))?;
    Ok(format!("100 points, max |sum z^4| / |z|^4 = {worst:.1e}"))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let pts = inflection_points();
    let cubic_residual = |t: C, v: &[C]| {
        let p = v[0].powu(3) + v[1].powu(3) + v[2].powu(3) + t * v[0] * v[1] * v[2];
        p.norm() / v.iter().map(|c| c.norm_sqr()).sum::<f64>().powf(1.5)
    };
    let random_t = |rng: &mut ChaCha8Rng| loop {
        let t = C::new(rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0));
        if (t.powu(3) + 27.0).norm() > 1e-3 {
            break t;
        }
    };
    let mut worst_law: f64 = 0.0;
    for _ in 0..200 {
        let t = random_t(&mut rng);
        let curve = HesseCubic::new(t).map_err(|e| e.to_string())?;
        let o = &pts[rng.random_range(0..9)];
        let a = curve.random_point(&mut rng);
        let b = curve.random_point(&mut rng);
        let ao = curve.add(&a, o, o).map_err(|e| e.to_string())?;
        let ab = curve.add(&a, &b, o).map_err(|e| e.to_string())?;
        let ba = curve.add(&b, &a, o).map_err(|e| e.to_string())?;
        worst_law = worst_law.max(ray_distance(&entries(&ao), &entries(&a)));
        worst_law = worst_law.max(ray_distance(&entries(&ab), &entries(&ba)));
        let closure = cubic_residual(t, &entries(&ab));
        ensure(closure <= 1e-9, format!("closure residual {closure:e}"))?;
        for p in &pts {
            let two = curve.add(p, p, o).map_err(|e| e.to_string())?;
            let three = curve.add(&two, p, o).map_err(|e| e.to_string())?;
            worst_law = worst_law.max(ray_distance(&entries(&three), &entries(o)));
        }
    }
    ensure(worst_law <= 1e-8, format!("identity/commutativity/torsion residual {worst_law:e}"))?;
    let mut worst_assoc: f64 = 0.0;
    for _ in 0..100 {
        let t = random_t(&mut rng);
        let curve = HesseCubic::new(t).map_err(|e| e.to_string())?;
        let o = &pts[rng.random_range(0..9)];
        let (a, b, c) = (curve.random_point(&mut rng), curve.random_point(&mut rng), curve.random_point(&mut rng));
        let left = curve.add(&curve.add(&a, &b, o).unwrap(), &c, o).map_err(|e| e.to_string())?;
        let right = curve.add(&a, &curve.add(&b, &c, o).unwrap(), o).map_err(|e| e.to_string())?;
        worst_assoc = worst_assoc.max(ray_distance(&entries(&left), &entries(&right)));
    }
    ensure(worst_assoc <= 1e-8, format!("associativity residual {worst_assoc:e}"))?;
    Ok(format!("200 instances, law residual {worst_law:.1e}; 100 triples, associativity {worst_assoc:.1e}"))
}

fn criterion_11() -> Outcome {
    let mut notes = Vec::new();
    for (dim, restarts, limit, target) in
        [(3usize, 10usize, Duration::from_secs(10), 1e-10), (4, 10, Duration::from_secs(10), 1e-10), (5, 50, Duration::from_secs(120), 1e-8)]
    {
        let start = Instant::now();
        let cfg = SearchConfig { restarts, seed: 2024, tolerance: target, ..SearchConfig::new(dim) };
        let r = search(&cfg).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(r.converged && r.defect < target, format!("N={dim}: defect {:e}", r.defect))?;
        ensure(elapsed < limit, format!("N={dim}: took {elapsed:?}"))?;
        // Independent orbit check.
        let orbit = sicmub_core::sic::heisenberg_orbit(&r.fiducial, &sicmub_core::heisenberg::HeisenbergAction::for_dim(dim).unwrap()).unwrap();
        let vs: Vec<Vec<C>> = orbit.vectors().iter().map(entries).collect();
        let dev = max_pairwise_dev(&vs, 1.0 / (dim + 1) as f64);
        ensure(dev < target, format!("N={dim}: recomputed defect {dev:e}"))?;
        ensure((sic_defect(&orbit) - dev).abs() < 1e-14, "library defect disagrees")?;
        if dim == 5 {
            let set = mub_prime(5).unwrap();
            let v = entries(&r.fiducial);
            let mus = set
                .bases()
                .iter()
                .map(|b| (purity(&v, &b.iter().map(entries).collect::<Vec<_>>()) - 2.0 / 6.0).abs())
                .fold(0.0, f64::max);
            ensure(mus <= 1e-8, format!("N=5 MUS deviation {mus:e}"))?;
            ensure(verify_fiducial(&r.fiducial, Tolerance::new(1e-8).unwrap()).unwrap().pass, "verify_fiducial")?;
            notes.push(format!("N=5 MUS dev {mus:.1e}"));
        }
        notes.push(format!("N={dim} defect {dev:.1e} in {elapsed:.2?}"));
    }
    Ok(notes.join(", "))
}

fn criterion_12() -> Outcome {
    let cfg = SearchConfig { restarts: 20, seed: 77, ..SearchConfig::new(5) };
    let first = search(&cfg).map_err(|e| e.to_string())?;
    let second = search(&cfg).map_err(|e| e.to_string())?;
    ensure(first == second, "SearchResult differs between runs")?;
    let report_for = |r: &sicmub_core::SearchResult| {
        let report = VerificationReport::new("search", 0.0, r.defect, Tolerance::new(cfg.tolerance).unwrap())
            .with_detail(serde_json::to_value(&cfg).unwrap())
            .with_detail(serde_json::to_value(r).unwrap());
        to_json_string(&report)
    };
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));
    let (p1, p2) = (dir.join("determinism-a.json"), dir.join("determinism-b.json"));
    std::fs::write(&p1, report_for(&first)).map_err(|e| e.to_string())?;
    std::fs::write(&p2, report_for(&second)).map_err(|e| e.to_string())?;
    let (b1, b2) = (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    ensure(b1 == b2, "report files differ")?;
    Ok(format!("identical SearchResult and {}-byte report files", b1.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("MUB correctness", criterion_1),
        ("Hesse / d=3 SIC", criterion_2),
        ("Hesse configuration", criterion_3),
        ("d=4 SIC and Clifford orbit", criterion_4),
        ("MUS theorem, N=3", criterion_5),
        ("Eddington set and Kummer configuration", criterion_6),
        ("Segre configuration", criterion_7),
        ("equiangular sets", criterion_8),
        ("quartic identity", criterion_9),
        ("cubic group law", criterion_10),
        ("optimizer", criterion_11),
        ("determinism", criterion_12),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg}", k + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {msg}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
