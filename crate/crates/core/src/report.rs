//! Command implementations producing canonical JSON reports.

use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::config::{prng, Caps, Prng};
use crate::error::{Error, Result};
use crate::ff::Field;
use crate::io::{field_json, matrix_json, subspace_json, vector_json, AlgebraFile, Input, ModuleFile};
use crate::liealg::{enumerate_diagonals, LieAlgebra};
use crate::pipeline::{
    analyze, faithful_cover, faithful_irreducible, criterion_from, ConstructionPath, CriterionReport,
    FaithfulCertificate, Structure,
};
use crate::rep::{is_irreducible, Character};
use crate::restricted::RestrictedLieAlgebra;

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: u64,
    pub caps: Caps,
}

/// A finished command. Everything except `timings` is a deterministic function of the inputs
/// and the seed.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub header: Map<String, Value>,
    pub results: Value,
    pub timings: BTreeMap<String, f64>,
    /// Process exit code: 0 when every check passed.
    pub exit_code: i32,
}

impl Report {
    pub fn to_value(&self, with_timings: bool) -> Value {
        let mut doc = self.header.clone();
        doc.insert("command".into(), json!(self.command));
        doc.insert("ok".into(), json!(self.exit_code == 0));
        doc.insert("results".into(), self.results.clone());
        if with_timings {
            doc.insert("timings".into(), json!(self.timings));
        }
        Value::Object(doc)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self, with_timings: bool) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value(with_timings)).expect("serializable");
        s.push('\n');
        s
    }
}

#[derive(Default)]
struct Stages(BTreeMap<String, f64>);

impl Stages {
    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.0.insert(name.to_string(), start.elapsed().as_secs_f64());
        out
    }
}

fn digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

fn caps_json(caps: &Caps) -> Value {
    json!({
        "field_size": caps.field_size,
        "env_dim": caps.env_dim,
        "max_p": caps.max_p,
        "enumeration": caps.enumeration,
        "ext_degree": caps.ext_degree,
        "meataxe_iterations": caps.meataxe_iterations,
        "envelope_dim": caps.envelope_dim,
    })
}

fn header(field: &Field, digest: String, opts: &Options) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("input_digest".into(), json!(digest));
    m.insert("seed".into(), json!(opts.seed));
    m.insert("caps".into(), caps_json(&opts.caps));
    m.insert("field".into(), field_json(field));
    m
}

fn load(file: &AlgebraFile, opts: &Options) -> Result<(Input, String)> {
    let input = file.decode(&opts.caps)?;
    let canon = AlgebraFile::encode(&input.algebra, input.pmap.as_deref()).to_json();
    Ok((input, canon))
}

fn character_json(c: &Character) -> Value {
    json!({ "field": field_json(c.field()), "values": vector_json(c.field(), c.values()) })
}

fn structure_json(algebra: &LieAlgebra, s: &Structure, opts: &Options, rng: &mut Prng) -> Result<Value> {
    let ideals: Vec<Value> = s
        .minimal_ideals
        .iter()
        .zip(&s.abelian)
        .map(|(m, &ab)| json!({ "dim": m.dim(), "abelian": ab, "basis": subspace_json(m) }))
        .collect();
    let mut classes = Vec::new();
    for class in &s.classes {
        let members: Vec<usize> = class
            .members
            .iter()
            .map(|m| s.minimal_ideals.iter().position(|x| x == m).expect("member is a minimal ideal"))
            .collect();
        let diagonals: Vec<Value> = enumerate_diagonals(algebra, class, &opts.caps, rng)?
            .iter()
            .map(|d| {
                json!({
                    "lambda": vector_json(algebra.field(), &d.lambda),
                    "diagonal": d.is_diagonal(),
                    "basis": subspace_json(&d.ideal),
                })
            })
            .collect();
        classes.push(json!({
            "members": members,
            "multiplicity": class.multiplicity(),
            "dim": class.rep_dim(),
            "endomorphism_dim": class.endomorphism_dim,
            "isotypic_dim": class.isotypic.dim(),
            "ideals": diagonals,
        }));
    }
    Ok(json!({
        "dim": algebra.dim(),
        "minimal_ideals": ideals,
        "asoc": { "dim": s.asoc.dim(), "basis": subspace_json(&s.asoc) },
        "classes": classes,
    }))
}

fn criterion_json(c: &CriterionReport) -> Value {
    let classes: Vec<Value> = c
        .classes
        .iter()
        .map(|v| json!({ "multiplicity": v.multiplicity, "dim": v.dim, "pass": v.pass }))
        .collect();
    json!({ "classes": classes, "verdict": c.verdict, "caveat": c.caveat })
}

pub fn analyze_cmd(file: &AlgebraFile, opts: &Options) -> Result<Report> {
    let mut stages = Stages::default();
    let (input, canon) = load(file, opts)?;
    let mut rng = prng(opts.seed);
    let algebra = &input.algebra;
    let structure = stages.time("minimal_ideals", || analyze(algebra, &opts.caps, &mut rng))?;
    let mut results = stages.time("diagonals", || structure_json(algebra, &structure, opts, &mut rng))?;
    let pmap = match &input.pmap {
        None => json!({ "given": false }),
        Some(p) => {
            let r = RestrictedLieAlgebra::new(algebra.clone(), p.clone(), &opts.caps)?;
            json!({ "given": true, "valid": r.validate(100, &mut rng).is_ok() })
        }
    };
    results["pmap"] = pmap;
    Ok(Report {
        command: "analyze",
        header: header(algebra.field(), digest(&[&canon]), opts),
        results,
        timings: stages.0,
        exit_code: 0,
    })
}

fn certificate_json(algebra: &LieAlgebra, cert: &FaithfulCertificate) -> Value {
    let f = algebra.field();
    let log = &cert.log;
    let (path, env_dim) = match log.path {
        ConstructionPath::Restricted => ("restricted", Value::Null),
        ConstructionPath::Envelope { dim } => ("envelope", json!(dim)),
    };
    let flags: Vec<Value> = cert
        .flags
        .iter()
        .enumerate()
        .map(|(i, fl)| json!({ "ideal": i, "abelian": fl.abelian, "nontrivial": fl.nontrivial }))
        .collect();
    let w = &cert.witness;
    let wf = w.element.field();
    let steps: Vec<Value> = log
        .steps
        .iter()
        .map(|s| {
            json!({
                "ideal": s.ideal,
                "skipped": s.skipped,
                "tensor_dim": s.tensor_dim,
                "factor_dim": s.factor_dim,
            })
        })
        .collect();
    let cluster: Vec<Value> = log.cluster.characters().iter().map(character_json).collect();
    let gf = log.restricted.field();
    json!({
        "path": path,
        "experimental": env_dim != Value::Null,
        "envelope_dim": env_dim,
        "module": serde_json::to_value(ModuleFile::encode(&cert.module)).expect("serializable"),
        "kernel_dim": cert.kernel.dim(),
        "flags": flags,
        "all_flags": cert.all_flags(),
        "irreducibility": {
            "element": matrix_json(&w.element),
            "factor": vector_json(wf, w.factor.coeffs()),
            "kernel_vector": vector_json(wf, &w.kernel_vector),
            "iterations": w.iterations,
        },
        "construction": {
            "algebra_dim": log.restricted.algebra().dim(),
            "normalized_pmap": log.restricted.pmap().iter().map(|v| vector_json(gf, v)).collect::<Vec<_>>(),
            "character": character_json(&log.socle.character),
            "extension_degree": log.socle.degree,
            "canonical_choice": log.socle.canonical_choice,
            "v0_dim": log.v0.dim(),
            "cluster": cluster,
            "cluster_simple": log.cluster.is_simple(),
            "steps": steps,
        },
        "module_field": field_json(cert.module.field()),
        "base_field": field_json(f),
    })
}

pub fn build_faithful_cmd(file: &AlgebraFile, opts: &Options) -> Result<Report> {
    let mut stages = Stages::default();
    let (input, canon) = load(file, opts)?;
    let mut rng = prng(opts.seed);
    let algebra = &input.algebra;
    let cert = stages.time("construction", || {
        faithful_irreducible(algebra, input.pmap.as_deref(), &opts.caps, &mut rng)
    })?;
    Ok(Report {
        command: "build-faithful",
        header: header(algebra.field(), digest(&[&canon]), opts),
        results: certificate_json(algebra, &cert),
        timings: stages.0,
        exit_code: 0,
    })
}

pub fn check_criterion_cmd(file: &AlgebraFile, opts: &Options) -> Result<Report> {
    let mut stages = Stages::default();
    let (input, canon) = load(file, opts)?;
    let mut rng = prng(opts.seed);
    let structure = stages.time("minimal_ideals", || analyze(&input.algebra, &opts.caps, &mut rng))?;
    Ok(Report {
        command: "check-criterion",
        header: header(input.algebra.field(), digest(&[&canon]), opts),
        results: criterion_json(&criterion_from(&structure)),
        timings: stages.0,
        exit_code: 0,
    })
}

pub fn cover_cmd(file: &AlgebraFile, opts: &Options) -> Result<Report> {
    let mut stages = Stages::default();
    let (input, canon) = load(file, opts)?;
    let mut rng = prng(opts.seed);
    let cover = stages.time("cover", || {
        faithful_cover(&input.algebra, input.pmap.as_deref(), &opts.caps, &mut rng)
    })?;
    let summands: Vec<Value> = cover
        .summands
        .iter()
        .map(|s| json!({ "ideal": s.ideal, "dim": s.module.dim(), "kept": s.kept }))
        .collect();
    Ok(Report {
        command: "cover",
        header: header(input.algebra.field(), digest(&[&canon]), opts),
        results: json!({
            "algebra": serde_json::to_value(AlgebraFile::encode(&cover.algebra, None)).expect("serializable"),
            "module": serde_json::to_value(ModuleFile::encode(&cover.module)).expect("serializable"),
            "summands": summands,
            "criterion": criterion_json(&cover.criterion),
        }),
        timings: stages.0,
        exit_code: 0,
    })
}

/// Re-checks a module independently: bracket relations, kernel, per-ideal action and
/// irreducibility. Exit code 2 for a matrix list that is not a representation, 1 when it is one
/// but not faithful or not irreducible.
pub fn verify_cmd(file: &AlgebraFile, module: &ModuleFile, opts: &Options) -> Result<Report> {
    let mut stages = Stages::default();
    let (input, canon) = load(file, opts)?;
    let algebra = &input.algebra;
    let f = algebra.field();
    let v = module.decode(&opts.caps)?;
    if !v.field().has_subfield(f) {
        return Err(Error::InvalidInput(format!("module field {} does not contain {}", v.field(), f)));
    }
    if v.n_gens() != algebra.dim() {
        return Err(Error::InvalidInput(format!(
            "module has {} matrices for an algebra of dimension {}",
            v.n_gens(),
            algebra.dim()
        )));
    }
    let module_canon = serde_json::to_string(&ModuleFile::encode(&v)).expect("serializable");
    let head = header(f, digest(&[&canon, &module_canon]), opts);
    let mut rng = prng(opts.seed);
    if let Err((i, j)) = v.validate(algebra) {
        return Ok(Report {
            command: "verify",
            header: head,
            results: json!({ "representation": false, "violation": [i, j] }),
            timings: stages.0,
            exit_code: 2,
        });
    }
    let structure = stages.time("minimal_ideals", || analyze(algebra, &opts.caps, &mut rng))?;
    let flags = stages.time("flags", || -> Result<Vec<Value>> {
        structure
            .minimal_ideals
            .iter()
            .enumerate()
            .map(|(i, m)| Ok(json!({ "ideal": i, "nontrivial": !v.acts_trivially(f, m)? })))
            .collect()
    })?;
    let kernel = stages.time("kernel", || v.kernel(f))?;
    let irreducible = if v.dim() == 0 {
        false
    } else {
        stages.time("irreducibility", || is_irreducible(&v, &opts.caps, &mut rng))?.is_irreducible()
    };
    let all_flags = flags.iter().all(|x| x["nontrivial"] == json!(true));
    let faithful = kernel.is_zero();
    Ok(Report {
        command: "verify",
        header: head,
        results: json!({
            "representation": true,
            "kernel_dim": kernel.dim(),
            "kernel": subspace_json(&kernel),
            "faithful": faithful,
            "flags": flags,
            "all_flags": all_flags,
            "irreducible": irreducible,
        }),
        timings: stages.0,
        exit_code: if faithful && all_flags && irreducible { 0 } else { 1 },
    })
}
