//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wirecode_core::code::{compute_k, dressed_distance, relations};
use wirecode_core::codes;
use wirecode_core::embed::{embed_on_graph, EmbedOptions};
use wirecode_core::graph::GeneralGraph;
use wirecode_core::layout::{color_classes, layout_2d, layout_dd, route_grid, DdOptions, GridTarget, RouteOptions};
use wirecode_core::sim::{build_schedule, direct_syndrome, simulate_extraction};
use wirecode_core::verify::{first_single_site_on_ancilla, verify_wire};
use wirecode_core::wire::build_wire_code;
use wirecode_core::{Pauli, PauliOperator, StabilizerCode, WireCode};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<String, String> {
    let t = start.elapsed();
    ensure(t < budget, || format!("took {t:.2?}, budget {budget:?}"))?;
    Ok(format!("{t:.2?}"))
}

fn random_codes() -> Vec<(String, StabilizerCode)> {
    (0..20u64)
        .map(|seed| {
            let n = 3 + (seed as usize % 8);
            let m = 1 + (seed as usize * 7 % n);
            (
                format!("random n={n} m={m} seed={seed}"),
                codes::random_commuting(n, m, seed),
            )
        })
        .collect()
}

fn fixtures() -> Vec<(String, StabilizerCode)> {
    let mut out = vec![
        ("repetition".to_string(), codes::repetition(3)),
        ("repetition overcomplete".to_string(), codes::repetition_overcomplete()),
        ("five-qubit".to_string(), codes::five_qubit()),
        ("shor".to_string(), codes::shor()),
        ("422".to_string(), codes::four_two_two()),
        ("xzzx check".to_string(), codes::xzzx_check()),
        ("toric 2x2".to_string(), codes::toric_2x2()),
        ("toric 3x3".to_string(), codes::toric(3)),
        ("rotated surface 3".to_string(), codes::rotated_surface(3)),
    ];
    out.extend(random_codes());
    out
}

/// Every wire code the pipeline produces for `code`, labelled by construction.
fn wire_codes(code: &StabilizerCode, graph: &GeneralGraph) -> Result<Vec<(&'static str, WireCode)>, String> {
    let dd = layout_dd(code, 3, &DdOptions::default()).map_err(|e| format!("layout 3D: {e}"))?;
    let emb = embed_on_graph(code, graph, &EmbedOptions::default()).map_err(|e| format!("embed: {e}"))?;
    Ok(vec![
        ("build", build_wire_code(code)),
        ("layout 2D", layout_2d(code).into_wire()),
        ("layout 3D", dd.into_wire()),
        ("embed", emb.placed.into_wire()),
    ])
}

fn k_preservation() -> Outcome {
    let start = Instant::now();
    let graph = GeneralGraph::random_regular(64, 3, 7);
    let mut codes = vec![
        ("repetition".to_string(), codes::repetition(3)),
        ("five-qubit".to_string(), codes::five_qubit()),
        ("shor".to_string(), codes::shor()),
    ];
    codes.extend(random_codes());
    let mut checked = 0;
    for (name, code) in &codes {
        let k_in = code.k();
        for (how, wire) in wire_codes(code, &graph)? {
            let k = compute_k(wire.subsystem());
            ensure(k == k_in, || format!("{name} via {how}: k_wire {k} != k_in {k_in}"))?;
            checked += 1;
        }
    }
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!(
        "{checked} wire codes over {} inputs, k exact, {t}",
        codes.len()
    ))
}

fn distance_bound() -> Outcome {
    let start = Instant::now();
    let cases = [
        ("repetition", codes::repetition(3), 1usize, 2usize),
        ("422", codes::four_two_two(), 2, 4),
        ("five-qubit", codes::five_qubit(), 3, 4),
    ];
    let mut notes = Vec::new();
    for (name, code, d_in, omega) in cases {
        let d = dressed_distance(&code.as_subsystem(), code.num_qubits()).distance();
        ensure(d == Some(d_in), || format!("{name}: d_in {d:?}, expected {d_in}"))?;
        ensure(code.max_weight() == omega, || {
            format!("{name}: omega {}", code.max_weight())
        })?;
        let target = d_in.div_ceil(omega);
        for (how, wire) in [
            ("build", build_wire_code(&code)),
            ("layout 2D", layout_2d(&code).into_wire()),
        ] {
            let below = dressed_distance(wire.subsystem(), target - 1);
            ensure(!below.found(), || {
                format!("{name} via {how}: dressed logical below {target}")
            })?;
            let exact = dressed_distance(wire.subsystem(), 3);
            ensure(exact.proves_at_least(target), || {
                format!("{name} via {how}: bound {target} not proven")
            })?;
            let d_wire = exact.distance().map_or(">= 4".to_string(), |d| d.to_string());
            notes.push(format!("{name}/{how} d_wire={d_wire} (target {target})"));
        }
    }
    let t = within(start, Duration::from_secs(300))?;
    Ok(format!("{}; {t}", notes.join(", ")))
}

fn weight_degree() -> Outcome {
    let start = Instant::now();
    let graph = GeneralGraph::random_regular(64, 3, 11);
    let mut count = 0;
    for (name, code) in fixtures() {
        for (how, wire) in wire_codes(&code, &graph)? {
            let sub = wire.subsystem();
            let (w, d) = (sub.max_multi_weight(), sub.max_degree());
            ensure(w <= 3 && d <= 3, || format!("{name} via {how}: weight {w}, degree {d}"))?;
            count += 1;
        }
    }
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("{count} wire codes, weight and degree <= 3, {t}"))
}

fn locality() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    let mut worst = 0;
    for (name, code) in fixtures() {
        let bound = code.max_weight() * code.max_degree() + 1;
        let dd = layout_dd(&code, 3, &DdOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        for (how, placed) in [("2D", layout_2d(&code)), ("3D", dd)] {
            let report = placed.check_locality();
            ensure(report.is_local(), || {
                format!(
                    "{name} {how}: {} violations, first {:?}",
                    report.violations.len(),
                    report.violations[0]
                )
            })?;
            let stack = placed.max_stacking();
            ensure(stack <= bound, || format!("{name} {how}: stacking {stack} > {bound}"))?;
            worst = worst.max(stack);
            count += 1;
        }
    }
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("{count} layouts, 0 violations, max stacking {worst}, {t}"))
}

fn recovery() -> Outcome {
    let graph = GeneralGraph::random_regular(64, 3, 13);
    let mut count = 0;
    for (name, code) in fixtures() {
        for (how, wire) in wire_codes(&code, &graph)? {
            let n_wire = wire.num_qubits();
            for s in 0..code.num_checks() {
                let got = wire
                    .stabilizer_recovery(s)
                    .map_err(|e| format!("{name} via {how}, check {s}: {e}"))?;
                let want = code.check(s).extended(n_wire);
                ensure(got == want, || {
                    format!("{name} via {how}, check {s}: product is {}", got.to_pauli_string())
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} checks recovered as s (x) 1"))
}

fn color_class_bound() -> Outcome {
    let mut worst = (0, 0);
    for (name, code) in fixtures() {
        let classes = color_classes(&code);
        let bound = code.max_weight() * code.max_degree() + 1;
        ensure(classes.len() <= bound, || {
            format!("{name}: {} classes > {bound}", classes.len())
        })?;
        let mut seen = BTreeSet::new();
        for (c, class) in classes.classes().iter().enumerate() {
            let qubits: BTreeSet<usize> = class.iter().map(|p| p.0).collect();
            let checks: BTreeSet<usize> = class.iter().map(|p| p.1).collect();
            ensure(qubits.len() == class.len() && checks.len() == class.len(), || {
                format!("{name}: class {c} shares a qubit or check")
            })?;
            for &p in class {
                ensure(seen.insert(p), || format!("{name}: pair {p:?} in two classes"))?;
            }
        }
        let want: BTreeSet<(usize, usize)> = (0..code.num_checks())
            .flat_map(|s| code.check(s).support().into_iter().map(move |q| (q, s)))
            .collect();
        ensure(seen == want, || format!("{name}: classes do not cover the incidences"))?;
        if classes.len() > worst.0 {
            worst = (classes.len(), bound);
        }
    }
    Ok(format!("largest {} classes (bound {})", worst.0, worst.1))
}

fn grid_routing() -> Outcome {
    let mut notes = Vec::new();
    for (dim, m) in [(3usize, 8usize), (4, 4)] {
        let base = dim - 1;
        let cells: Vec<Vec<i32>> = (0..m.pow(base as u32))
            .map(|mut t| {
                (0..base)
                    .map(|_| {
                        let c = (t % m) as i32;
                        t /= m;
                        c
                    })
                    .collect()
            })
            .collect();
        let mut ratios = Vec::new();
        for seed in 0..4u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut sinks = cells.clone();
            sinks.shuffle(&mut rng);
            let pairs: Vec<(Vec<i32>, Vec<i32>)> = cells
                .iter()
                .zip(&sinks)
                .map(|(a, b)| {
                    let mut a = a.clone();
                    a.push(0);
                    let mut b = b.clone();
                    b.push(m as i32);
                    (a, b)
                })
                .collect();
            let grid = GridTarget::slab(dim, m, m);
            let routed = route_grid(
                &pairs,
                &grid,
                &RouteOptions {
                    seed,
                    ..Default::default()
                },
            )
            .map_err(|e| format!("[{m}]^{base} seed {seed}: {e}"))?;
            let g = &routed.grid;
            let top = g.height() as i32;
            let mut used = BTreeSet::new();
            for ((src, dst), path) in pairs.iter().zip(&routed.paths) {
                let mut dst = dst.clone();
                dst[base] = top;
                ensure(
                    g.coords(path[0]) == *src && g.coords(*path.last().unwrap()) == dst,
                    || format!("[{m}]^{base} seed {seed}: path endpoints wrong"),
                )?;
                for w in path.windows(2) {
                    let (a, b) = (g.coords(w[0]), g.coords(w[1]));
                    let step: i32 = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).sum();
                    ensure(step == 1, || format!("[{m}]^{base} seed {seed}: jump {a:?} -> {b:?}"))?;
                    ensure(used.insert((w[0].min(w[1]), w[0].max(w[1]))), || {
                        format!("[{m}]^{base} seed {seed}: edge {a:?}-{b:?} used twice")
                    })?;
                }
            }
            ratios.push(format!("{:.2}", routed.c_d()));
        }
        notes.push(format!(
            "[{m}]^{base}xh: {} permutations, c_D [{}]",
            cells.len(),
            ratios.join(", ")
        ));
    }
    Ok(notes.join("; "))
}

fn scaling_exponent() -> Outcome {
    let start = Instant::now();
    let mut pts = Vec::new();
    let mut sizes = Vec::new();
    for d in 4..=10 {
        let code = codes::rotated_surface(d);
        let placed = layout_dd(&code, 3, &DdOptions::default()).map_err(|e| format!("surface d={d}: {e}"))?;
        let (n, nw) = (code.num_qubits(), placed.wire().num_qubits());
        sizes.push(format!("{n}->{nw}"));
        pts.push(((n as f64).ln(), (nw as f64).ln()));
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    ensure((slope - 1.5).abs() <= 0.2, || {
        format!("slope {slope:.3} outside 1.5 +- 0.2")
    })?;
    let t = within(start, Duration::from_secs(300))?;
    Ok(format!("slope {slope:.3} over n_wire [{}], {t}", sizes.join(", ")))
}

fn syndrome_extraction() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for (name, code) in [
        ("repetition", codes::repetition(3)),
        ("five-qubit", codes::five_qubit()),
    ] {
        let n = code.num_qubits();
        for (how, wire) in [
            ("build", build_wire_code(&code)),
            ("layout 2D", layout_2d(&code).into_wire()),
        ] {
            let sched = build_schedule(&wire).map_err(|e| format!("{name} via {how}: {e}"))?;
            for q in 0..n {
                for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                    let err = PauliOperator::single(n, q, p);
                    let want: Vec<bool> = code.checks().iter().map(|c| !c.commutes_with(&err)).collect();
                    ensure(direct_syndrome(&wire, &err) == want, || {
                        format!("{name}: direct syndrome of {p}{q}")
                    })?;
                    for seed in [1u64, 2] {
                        let sim = simulate_extraction(&wire, &sched, &err, seed)
                            .map_err(|e| format!("{name} via {how}, {p}{q}: {e}"))?;
                        ensure(sim.syndrome == want, || {
                            format!("{name} via {how}, {p}{q} seed {seed}: {:?} != {want:?}", sim.syndrome)
                        })?;
                        count += 1;
                    }
                }
            }
        }
    }
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!("{count} simulated extractions match, {t}"))
}

fn relation_images() -> Outcome {
    let graph = GeneralGraph::random_regular(64, 3, 17);
    let mut notes = Vec::new();
    for (name, code) in [
        ("repetition overcomplete", codes::repetition_overcomplete()),
        ("toric 2x2", codes::toric_2x2()),
    ] {
        let rels = relations(&code);
        ensure(!rels.is_empty(), || format!("{name}: no relations"))?;
        for r in &rels {
            let mut prod = PauliOperator::identity(code.num_qubits());
            for &s in r {
                prod.mul_assign(code.check(s));
            }
            ensure(prod.is_identity(), || {
                format!("{name}: relation {r:?} is not a relation")
            })?;
        }
        for (how, wire) in wire_codes(&code, &graph)? {
            for r in &rels {
                let ok = wire
                    .verify_relation_image(r)
                    .map_err(|e| format!("{name} via {how}: {e}"))?;
                ensure(ok, || {
                    format!("{name} via {how}: relation {r:?} image is not the identity")
                })?;
            }
        }
        notes.push(format!("{name}: {} relations", rels.len()));
    }
    Ok(notes.join(", "))
}

fn negative_control() -> Outcome {
    let mut notes = Vec::new();
    {
        let (name, code) = ("five-qubit", codes::five_qubit());
        let wire = build_wire_code(&code);
        let clean = verify_wire(&code, &wire, 2);
        ensure(clean.all_green(), || format!("{name}: intact wire code not green"))?;
        ensure(clean.d_wire_found.is_none_or(|d| d > 1), || {
            format!("{name}: intact wire code has d=1")
        })?;
        let g = first_single_site_on_ancilla(&wire).ok_or(format!("{name}: no single-site check"))?;
        let gauge = wire.subsystem().gauge(g).clone();
        let broken = wire.remove_single_site(g).map_err(|e| format!("{name}: {e}"))?;
        let report = verify_wire(&code, &broken, 2);
        ensure(report.d_wire_found == Some(1), || {
            format!("{name}: found {:?}", report.d_wire_found)
        })?;
        ensure(!report.all_green(), || format!("{name}: broken wire code passes"))?;
        notes.push(format!(
            "{name}: removed {gauge}, witness {}, k {} -> {}",
            report.d_wire_witness.unwrap_or_default(),
            report.k_in,
            report.k_wire
        ));
    }
    Ok(notes.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("k preservation", k_preservation),
        ("distance bound", distance_bound),
        ("weight and degree 3", weight_degree),
        ("locality", locality),
        ("stabilizer recovery", recovery),
        ("color classes", color_class_bound),
        ("grid routing", grid_routing),
        ("scaling exponent", scaling_exponent),
        ("syndrome extraction", syndrome_extraction),
        ("relations", relation_images),
        ("negative control", negative_control),
    ];
    let mut results = BTreeMap::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match &out {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail}", i + 1),
            Err(detail) => println!("FAIL criterion {:>2} {name}: {detail}", i + 1),
        }
        results.insert(i + 1, out.is_ok());
    }
    let failed = results.values().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
