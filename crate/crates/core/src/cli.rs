//! Command implementations behind the `tropgon` binary. Each returns an
//! [`Outcome`] with exit code 0 (success), 1 (semantic violation or failed
//! check) or 2 (malformed input).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::curve::{Curve, Point};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::format::Workspace;
use crate::gonality::{
    construct_witness, default_tree_divisor, point_name, same_system, system_from_witness, system_roundtrip, tree_signature,
    verify_witness, Witness,
};
use crate::rational::fmt_q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome { code, stdout: String::new(), stderr }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::fail(if e.is_malformed() { 2 } else { 1 }, format!("error: {e}\n"))
    }
}

fn run(f: impl FnOnce() -> Result<Outcome>) -> Outcome {
    f().unwrap_or_else(Outcome::from)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Parses and validates every object in the files.
pub fn validate(paths: &[PathBuf]) -> Outcome {
    run(|| {
        let ws = Workspace::load(paths)?;
        let mut out = String::new();
        for (id, c) in &ws.curves {
            for sid in c.systems.keys() {
                c.system(sid)?;
            }
            writeln!(
                out,
                "curve {id}: {} vertices, {} edges, genus {}, {} functions, {} divisors, {} systems",
                c.curve.vertices().len(),
                c.curve.edges().len(),
                c.curve.b1(),
                c.funcs.len(),
                c.divs.len(),
                c.systems.len()
            )
            .unwrap();
        }
        for (id, m) in &ws.maps {
            let r = m.morphism.report();
            writeln!(out, "map {id}: {} -> {}, finite {}", m.source, m.target, r.is_finite).unwrap();
        }
        out.push_str("valid\n");
        Ok(Outcome::ok(out))
    })
}

/// `+c @ edge@offset` terms, larger coefficients first, then by position.
pub fn divisor_line(curve: &Curve, d: &Divisor) -> String {
    let mut terms: Vec<(i64, (String, crate::rational::Ext), Point)> =
        d.iter().map(|(p, c)| (-c, curve.sort_key(p), p.clone())).collect();
    terms.sort();
    terms
        .into_iter()
        .map(|(c, _, p)| format!("{:+} @ {}", -c, curve.label(&p)))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Prints `div f`.
pub fn div(paths: &[PathBuf], func: &str) -> Outcome {
    run(|| {
        let ws = Workspace::load(paths)?;
        let (cid, f) = ws.func(func)?;
        if f.is_neg_infinity() {
            return Err(Error::NegInfFunction);
        }
        let d = f.principal_divisor()?;
        Ok(Outcome::ok(format!("{}\n", divisor_line(ws.curve(cid)?, &d))))
    })
}

#[derive(Clone, Debug, Default)]
pub struct ConstructArgs {
    pub paths: Vec<PathBuf>,
    pub system: String,
    pub out: Option<PathBuf>,
    pub certificate: Option<PathBuf>,
    pub quiet: bool,
}

/// Bundle text: `Γ`, `Γ̃` as `<id>.mod`, `T★` as `<id>.tree`, and the
/// maps `pi` and `phi`.
pub fn bundle_text(curve_id: &str, w: &Witness) -> Result<String> {
    let mut ws = Workspace::default();
    let (m, t) = (format!("{curve_id}.mod"), format!("{curve_id}.tree"));
    ws.add_curve(curve_id, w.curve.clone())?;
    ws.add_curve(&m, w.modified.clone())?;
    ws.add_curve(&t, w.tree.clone())?;
    ws.add_map("pi", &m, curve_id, &w.pi)?;
    ws.add_map("phi", &m, &t, &w.phi)?;
    Ok(ws.print())
}

/// The certificate: degree, `I(Λ)`, grafts, and the local degree of
/// `φ̃` at every vertex of `Γ̃`.
pub fn certificate_text(curve_id: &str, w: &Witness) -> String {
    let mut s = String::new();
    writeln!(s, "certificate {curve_id}").unwrap();
    writeln!(s, "degree {}", w.certificate.degree).unwrap();
    for (p, m) in &w.indeterminacy {
        writeln!(s, "indeterminacy {} {m}", point_name(&w.curve, p)).unwrap();
    }
    for g in &w.grafts {
        writeln!(s, "graft {} level {} length {}", point_name(&w.curve, &g.host), g.level, fmt_q(&g.total_length())).unwrap();
    }
    for (p, k) in &w.certificate.checkpoints {
        writeln!(s, "harmonic {} {k}", point_name(&w.modified, p)).unwrap();
    }
    s
}

/// Builds and certifies `(Γ̃, π, φ̃)` for a system.
pub fn construct(args: &ConstructArgs) -> Outcome {
    run(|| {
        let ws = Workspace::load(&args.paths)?;
        let (cid, s) = ws.system(&args.system)?;
        let w = construct_witness(&s)?;
        let bundle = bundle_text(cid, &w)?;
        let cert = certificate_text(cid, &w);
        if let Some(p) = &args.out {
            write_file(p, &bundle)?;
        }
        if let Some(p) = &args.certificate {
            write_file(p, &cert)?;
        }
        let mut out = String::new();
        if !args.quiet {
            out.push_str(&cert);
            if args.out.is_none() {
                out.push('\n');
                out.push_str(&bundle);
            }
        }
        Ok(Outcome::ok(out))
    })
}

/// Re-checks a bundle independently of how it was built.
pub fn verify(paths: &[PathBuf], pi: &str, phi: &str) -> Outcome {
    run(|| {
        let ws = Workspace::load(paths)?;
        let (pi, phi) = (&ws.morphism(pi)?.morphism, &ws.morphism(phi)?.morphism);
        let cert = verify_witness(pi, phi)?;
        Ok(Outcome::ok(format!(
            "verified: finite harmonic morphism of degree {} ({} checkpoints)\n",
            cert.degree,
            cert.checkpoints.len()
        )))
    })
}

#[derive(Clone, Debug, Default)]
pub struct FromWitnessArgs {
    pub paths: Vec<PathBuf>,
    pub pi: String,
    pub phi: String,
    /// A point of the tree; defaults to the image of the first vertex.
    pub point: Option<String>,
    pub out: Option<PathBuf>,
}

/// Emits `π_* φ̃^* |D_T|` as a system file on the original curve.
pub fn from_witness(args: &FromWitnessArgs) -> Outcome {
    run(|| {
        let ws = Workspace::load(&args.paths)?;
        let (pi, phi) = (ws.morphism(&args.pi)?, ws.morphism(&args.phi)?);
        let d_t = match &args.point {
            Some(p) => Divisor::point(ws.point(&phi.target, p)?),
            None => default_tree_divisor(&phi.morphism)?,
        };
        let s = system_from_witness(&pi.morphism, &phi.morphism, &d_t)?;
        let mut outws = Workspace::default();
        outws.add_curve(&pi.target, s.curve().clone())?.add_system("lambda", &s)?;
        let text = outws.print();
        match &args.out {
            Some(p) => {
                write_file(p, &text)?;
                Ok(Outcome::ok(format!("wrote system `lambda` of degree {}\n", s.degree())))
            }
            None => Ok(Outcome::ok(text)),
        }
    })
}

#[derive(Clone, Debug, Default)]
pub struct RoundtripArgs {
    pub paths: Vec<PathBuf>,
    /// Start from a system ...
    pub system: Option<String>,
    /// ... or from the bundle maps `pi` and `phi`.
    pub pi: String,
    pub phi: String,
}

pub fn roundtrip(args: &RoundtripArgs) -> Outcome {
    run(|| {
        let ws = Workspace::load(&args.paths)?;
        if let Some(sid) = &args.system {
            let (_, s) = ws.system(sid)?;
            return if system_roundtrip(&s)? {
                Ok(Outcome::ok("systems equivalent\n".into()))
            } else {
                Err(Error::CertificateFailed("systems differ after the round trip".into()))
            };
        }
        let (pi, phi) = (&ws.morphism(&args.pi)?.morphism, &ws.morphism(&args.phi)?.morphism);
        let degree = verify_witness(pi, phi)?.degree;
        let s = system_from_witness(pi, phi, &default_tree_divisor(phi)?)?;
        let w = construct_witness(&s)?;
        if w.certificate.degree != degree || tree_signature(phi.target()) != tree_signature(&w.tree) {
            return Err(Error::CertificateFailed("recovered witness differs".into()));
        }
        let back = system_from_witness(&w.pi, &w.phi, &default_tree_divisor(&w.phi)?)?;
        if !same_system(&s, &back)? {
            return Err(Error::CertificateFailed("systems differ after the round trip".into()));
        }
        Ok(Outcome::ok(format!("witness recovered: degree {degree}, isometric tree\nsystems equivalent\n")))
    })
}
