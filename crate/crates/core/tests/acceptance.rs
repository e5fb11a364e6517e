//! One line per acceptance criterion. Exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::checks::*;
use common::{random_divisor, random_function, random_point, rng, systems};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tropgon::cli::{self, ConstructArgs, RoundtripArgs};
use tropgon::error::Error;
use tropgon::fixtures::{circ4_fold, seg2_constant_system, star3, theta_quotient, theta_witness};
use tropgon::gonality::{check_system, construct_witness, system_from_witness, system_roundtrip, tree_signature, witness_roundtrip, default_tree_divisor};
use tropgon::image_tree::ImageTree;
use tropgon::plfunc::{trop_combine, PlFunction};
use tropgon::rational::{q, Q};
use tropgon::trop_linalg::{ProjPoint, TropScalar};

type Outcome = Result<String, String>;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    if t < limit {
        Ok(t)
    } else {
        Err(format!("took {t:?}, limit {limit:?}"))
    }
}

fn tail_pipeline() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (bundle, cert) = (dir.path().join("bundle.trop"), dir.path().join("cert.txt"));
    let start = Instant::now();
    let out = cli::construct(&ConstructArgs {
        paths: vec![data("tail.trop")],
        system: "s".into(),
        out: Some(bundle.clone()),
        certificate: Some(cert.clone()),
        quiet: true,
    });
    ensure!(out.code == 0, "construct: {}", out.stderr);
    let v = cli::verify(&[bundle], "pi", "phi");
    let t = within(start, Duration::from_secs(1))?;
    ensure!(v.code == 0, "verify: {}", v.stderr);
    let text = std::fs::read_to_string(cert).map_err(|e| e.to_string())?;
    let lines = |prefix: &str| text.lines().filter(|l| l.starts_with(prefix)).collect::<Vec<_>>();
    // c2 runs from a (at 1/2) to o, so c2@1/1 is the circle point 3/2.
    ensure!(lines("indeterminacy ") == ["indeterminacy c2@1/1 1"], "indeterminacy {:?}", lines("indeterminacy "));
    ensure!(lines("graft ") == ["graft c2@1/1 level 1 length 1/1"], "grafts {:?}", lines("graft "));
    ensure!(lines("degree ") == ["degree 2"], "{:?}", lines("degree "));
    ensure!(v.stdout.contains("degree 2"), "verify says {}", v.stdout);
    Ok(format!("I = {{1.5}}, one graft of length 1, degree 2, verified in {t:?}"))
}

fn roundtrips() -> Outcome {
    let start = Instant::now();
    for (f, sys) in [("tail.trop", "s"), ("circ4.trop", "s"), ("seg2.trop", "s")] {
        let out = cli::roundtrip(&RoundtripArgs { paths: vec![data(f)], system: Some(sys.into()), ..Default::default() });
        ensure!(out.code == 0 && out.stdout == "systems equivalent\n", "{f}: {}", out.stderr);
    }
    for (name, s) in systems() {
        ensure!(system_roundtrip(&s).map_err(|e| e.to_string())?, "{name} round trip differs");
    }
    let (pi, phi) = theta_witness();
    let d = default_tree_divisor(&phi).map_err(|e| e.to_string())?;
    ensure!(witness_roundtrip(&pi, &phi, &d).map_err(|e| e.to_string())?, "THETA witness round trip differs");
    let s = system_from_witness(&pi, &phi, &d).map_err(|e| e.to_string())?;
    let w = construct_witness(&s).map_err(|e| e.to_string())?;
    ensure!(w.certificate.degree == 2, "THETA degree {}", w.certificate.degree);
    ensure!(tree_signature(&w.tree) == tree_signature(&star3()), "THETA tree {}", tree_signature(&w.tree));
    let out = cli::roundtrip(&RoundtripArgs { paths: vec![data("theta.trop")], pi: "pi".into(), phi: "phi".into(), system: None });
    ensure!(out.code == 0, "theta bundle: {}", out.stderr);
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("TAIL, CIRC4, SEG2 systems and THETA witness recovered in {t:?}"))
}

fn push_pull(r: &mut ChaCha8Rng) -> Outcome {
    let maps = [("CIRC4 fold", circ4_fold()), ("THETA quotient", theta_quotient())];
    for (name, phi) in &maps {
        for _ in 0..100 {
            let f = random_function(r, phi.source());
            push_commutes(phi, &f).map_err(|e| format!("{name}: {e}"))?;
            let g = random_function(r, phi.target());
            pull_commutes(phi, &g).map_err(|e| format!("{name}: {e}"))?;
            let (dt, ds) = (random_divisor(r, phi.target()), random_divisor(r, phi.source()));
            degree_laws(phi, &dt, &ds).map_err(|e| format!("{name}: {e}"))?;
        }
    }
    Ok("100 functions and 100 divisors each way on both maps".into())
}

fn lemmas(r: &mut ChaCha8Rng) -> Outcome {
    let mut segment_hits = 0;
    let mut locus_hits = 0;
    let mut har = 0;
    for (name, s) in systems() {
        let zs = sample_points(r, &s, 4);
        for _ in 0..200 {
            let (x, y) = (random_point(r, s.curve()), random_point(r, s.curve()));
            segment_hits += lemma_base(&s, &x, &y, &zs).map_err(|e| format!("{name} base: {e}"))?;
            lemma_zero(&s, &x, &y).map_err(|e| format!("{name} zero: {e}"))?;
            locus_hits += lemma_ratg(&s, &x, &y, &zs).map_err(|e| format!("{name} ratg: {e}"))?;
        }
        let tree = ImageTree::build(&s).map_err(|e| e.to_string())?;
        let bad: Vec<_> = tropgon::gonality::indeterminacy_set(&s, &tree)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|(p, _)| p)
            .collect();
        let fine = tree.phi.source().clone();
        let mut done = 0;
        while done < 200 {
            let x = random_point(r, &fine);
            if bad.contains(&tree.refinement.original_point(s.curve(), &x)) {
                continue;
            }
            lemma_har(&s, &tree, &x).map_err(|e| format!("{name} har: {e}"))?;
            done += 1;
        }
        har += done;
    }
    ensure!(segment_hits > 0 && locus_hits > 0, "truncation formula never exercised");
    Ok(format!(
        "200 pairs per fixture; {segment_hits} segment and {locus_hits} locus truncations, {har} har points"
    ))
}

fn remark_chain() -> Outcome {
    for (name, s) in systems() {
        let cert = s.check_rank_one().map_err(|e| e.to_string())?;
        ensure!(cert.passed(), "{name} fails the rank test");
        let tree = check_system(&s).map_err(|e| format!("{name}: {e}"))?;
        let (g, a) = (tree.geomdim(), s.algdim());
        ensure!(1 <= g && g == 1 && g <= a, "{name}: geomdim {g}, algdim {a}");
    }
    let flat = seg2_constant_system();
    let fails = flat.check_rank_one().map_err(|e| e.to_string())?.failing;
    ensure!(fails.is_some(), "{{0}} passes the rank test");
    match check_system(&flat) {
        Err(Error::RankFailure(p)) if p == "B" => {}
        other => return Err(format!("{{0}} gives {other:?}")),
    }
    Ok("rank certificate, geomdim 1 <= algdim on all fixtures; {0} fails at B".into())
}

fn random_proj(r: &mut ChaCha8Rng, n: usize) -> ProjPoint {
    let c: Vec<Q> = (0..=n).map(|_| q(r.gen_range(-20..=20), r.gen_range(1..=4))).collect();
    ProjPoint::from_finite(&c).unwrap()
}

fn segments(r: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..500 {
        let n = r.gen_range(1..=6);
        let (x, y) = (random_proj(r, n), random_proj(r, n));
        segment_facts(&x, &y).map_err(|e| format!("{x} to {y}: {e}"))?;
        let c = random_proj(r, n);
        metric_axioms(&x, &y, &c)?;
    }
    Ok("500 segments and 500 triples, n <= 6".into())
}

fn coeffs(r: &mut ChaCha8Rng, n: usize) -> Vec<TropScalar> {
    loop {
        let c: Vec<TropScalar> = (0..n)
            .map(|_| if r.gen_bool(0.3) { TropScalar::neg_inf() } else { TropScalar::finite(q(r.gen_range(-4..=4), 2)) })
            .collect();
        if c.iter().any(|x| !x.is_neg_inf()) {
            return c;
        }
    }
}

fn minimization(r: &mut ChaCha8Rng) -> Outcome {
    let mut checked = 0;
    for (name, s) in systems() {
        for _ in 0..2 {
            let mut gens: Vec<PlFunction> = s.gens().to_vec();
            while gens.len() < 5 {
                gens.push(trop_combine(&coeffs(r, s.gens().len()), s.gens()).unwrap());
            }
            minimization_facts(&gens).map_err(|e| format!("{name}: {e}"))?;
        }
        for _ in 0..10 {
            let member = trop_combine(&coeffs(r, s.gens().len()), s.gens()).unwrap();
            let other = random_function(r, s.curve());
            for f in [&member, &other] {
                membership_agrees(f, s.gens()).map_err(|e| format!("{name}: {e}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("all orders of 5 generators agree; {checked} memberships match the oracle"))
}

fn structural(r: &mut ChaCha8Rng) -> Outcome {
    for (name, s) in systems() {
        let w = construct_witness(&s).map_err(|e| format!("{name}: {e}"))?;
        ensure!(w.modified.b1() == w.curve.b1(), "{name}: b1 {} vs {}", w.modified.b1(), w.curve.b1());
        for _ in 0..3 {
            subdivision_invariance(r, &s).map_err(|e| format!("{name}: {e}"))?;
        }
    }
    Ok("b1 preserved; 10 inserted vertices change no observable".into())
}

fn main() {
    let mut r = rng(2024);
    let criteria: Vec<(&str, Box<dyn FnOnce(&mut ChaCha8Rng) -> Outcome>)> = vec![
        ("TAIL pipeline", Box::new(|_| tail_pipeline())),
        ("round trips", Box::new(|_| roundtrips())),
        ("push-pull", Box::new(push_pull)),
        ("lemma suites", Box::new(lemmas)),
        ("remark chain", Box::new(|_| remark_chain())),
        ("segments and metric", Box::new(segments)),
        ("minimization", Box::new(minimization)),
        ("structural", Box::new(structural)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let res = catch_unwind(AssertUnwindSafe(|| f(&mut r))).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match res {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
