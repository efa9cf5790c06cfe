//! Construction of faithful irreducible modules: a character that is nonzero on every abelian
//! minimal ideal, an irreducible module with that character, and tensor products that switch on
//! the non-abelian minimal ideals one at a time.

use crate::config::{Caps, Prng};
use crate::error::{Error, Result};
use crate::ff::{Elem, Field, Matrix, Subspace};
use crate::liealg::{IsoClass, LieAlgebra};
use crate::redenv::{irreducible_with_cluster, smallest_factor};
use crate::rep::{composition_series, hom_space, is_irreducible, Character, Cluster, Irreducibility, NortonWitness, Representation};
use crate::restricted::{p_envelope, RestrictedLieAlgebra};

/// Minimal ideals, abelian socle and the isomorphism classes inside it.
#[derive(Clone, Debug)]
pub struct Structure {
    pub minimal_ideals: Vec<Subspace>,
    pub abelian: Vec<bool>,
    pub asoc: Subspace,
    pub classes: Vec<IsoClass>,
}

impl Structure {
    pub fn abelian_ideals(&self) -> impl Iterator<Item = &Subspace> {
        self.minimal_ideals
            .iter()
            .zip(&self.abelian)
            .filter(|(_, &a)| a)
            .map(|(m, _)| m)
    }

    pub fn nonabelian_ideals(&self) -> impl Iterator<Item = (usize, &Subspace)> {
        self.minimal_ideals
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.abelian[*i])
    }
}

pub fn check_algebra(algebra: &LieAlgebra) -> Result<()> {
    algebra
        .validate()
        .map_err(|v| Error::InvalidInput(format!("structure constants fail {v:?}")))
}

pub fn analyze(algebra: &LieAlgebra, caps: &Caps, rng: &mut Prng) -> Result<Structure> {
    check_algebra(algebra)?;
    let minimal_ideals = algebra.minimal_ideals(caps, rng)?;
    let abelian: Vec<bool> = minimal_ideals.iter().map(|m| algebra.is_abelian(m)).collect();
    let asoc = algebra.abelian_socle(&minimal_ideals);
    let classes = algebra.iso_classes(&minimal_ideals)?;
    Ok(Structure {
        minimal_ideals,
        abelian,
        asoc,
        classes,
    })
}

/// The character of the socle together with the functionals `g_i = c ∘ phi_i` it was built from.
#[derive(Clone, Debug)]
pub struct SocleCharacter {
    pub character: Character,
    /// `[E : F]`.
    pub degree: usize,
    /// `functionals[class][i][j] = g_i(u_j)` for the RREF basis `u_j` of `A_1`.
    pub functionals: Vec<Vec<Vec<Elem>>>,
    /// Whether the coordinate-times-power-basis choice was used (as opposed to a seeded search).
    pub canonical_choice: bool,
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// The extension degree forced by a class: `r * dim End(A_1) <= dim A_1 * [E:F]`.
pub fn class_degree(class: &IsoClass) -> usize {
    ceil_div(class.multiplicity() * class.endomorphism_dim, class.rep_dim()).max(1)
}

/// Whether `sum_i g_i ∘ delta_i` is nonzero for every nonzero `(delta_i)` in `End(A_1)^r`,
/// i.e. `c` vanishes on no minimal ideal of the isotypic component.
pub fn class_functionals_independent(class: &IsoClass, ext: &Field, g: &[Vec<Elem>]) -> Result<bool> {
    let base = class.isotypic.field();
    let emb = ext.embedding(base)?;
    let d = class.rep_dim();
    let n = emb.relative_degree();
    let ends = hom_space(&class.module, &class.module);
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for gi in g {
        for delta in &ends {
            let mut row = Vec::with_capacity(d * n);
            for j in 0..d {
                let val = (0..d).fold(Elem::ZERO, |acc, l| {
                    ext.add(acc, ext.mul(emb.embed(delta.get(l, j)), gi[l]))
                });
                row.extend(emb.coordinates(val));
            }
            rows.push(row);
        }
    }
    Ok(Matrix::from_rows(base, d * n, &rows).rank() == g.len() * ends.len())
}

/// The character equal to `g_i(a)` on `phi_i(a)` for every class and zero on the unit vectors
/// complementing the socle.
pub fn assemble_character(
    algebra: &LieAlgebra,
    structure: &Structure,
    ext: &Field,
    functionals: &[Vec<Vec<Elem>>],
) -> Result<Character> {
    let f = algebra.field();
    let n = algebra.dim();
    let emb = ext.embedding(f)?;
    let mut rows = Vec::new();
    let mut vals = Vec::new();
    for (class, g) in structure.classes.iter().zip(functionals) {
        let d = class.rep_dim();
        for (i, gi) in g.iter().enumerate() {
            for (j, &v) in gi.iter().enumerate().take(d) {
                let mut unit = vec![Elem::ZERO; d];
                unit[j] = Elem::ONE;
                rows.push(class.image(i, &unit));
                vals.push(v);
            }
        }
    }
    for comp in structure.asoc.complement_basis() {
        rows.push(comp);
        vals.push(Elem::ZERO);
    }
    let binv = Matrix::from_rows(f, n, &rows)
        .inverse()
        .ok_or_else(|| Error::verification("socle_character", "class families do not span the socle"))?;
    let values = (0..n)
        .map(|l| {
            vals.iter().enumerate().fold(Elem::ZERO, |acc, (k, &v)| {
                ext.add(acc, ext.mul(emb.embed(binv.get(l, k)), v))
            })
        })
        .collect();
    Ok(Character::new(ext, values))
}

pub fn vanishes_on(c: &Character, base: &Field, s: &Subspace) -> Result<bool> {
    for v in s.vectors() {
        if !c.eval(base, &v)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn canonical_functionals(class: &IsoClass, ext: &Field, degree: usize) -> Vec<Vec<Elem>> {
    let d = class.rep_dim();
    let gamma = ext.generator();
    (0..d)
        .flat_map(|j| (0..degree).map(move |k| (j, k)))
        .take(class.multiplicity())
        .map(|(j, k)| {
            let mut g = vec![Elem::ZERO; d];
            g[j] = ext.pow(gamma, k as u64);
            g
        })
        .collect()
}

/// A character over an extension `E` that is nonzero on every abelian minimal ideal.
pub fn socle_character(
    algebra: &LieAlgebra,
    structure: &Structure,
    caps: &Caps,
    rng: &mut Prng,
) -> Result<SocleCharacter> {
    let f = algebra.field();
    if structure.classes.is_empty() {
        return Ok(SocleCharacter {
            character: Character::zero(f, algebra.dim()),
            degree: 1,
            functionals: Vec::new(),
            canonical_choice: true,
        });
    }
    let start = structure.classes.iter().map(class_degree).max().unwrap_or(1);
    for degree in start..=caps.ext_degree as usize {
        let ext = Field::with_cap(f.p(), f.degree() * degree as u32, caps.field_size)?;
        for attempt in 0..=32 {
            let functionals: Vec<Vec<Vec<Elem>>> = structure
                .classes
                .iter()
                .map(|class| {
                    if attempt == 0 {
                        canonical_functionals(class, &ext, degree)
                    } else {
                        (0..class.multiplicity())
                            .map(|_| (0..class.rep_dim()).map(|_| ext.random(rng)).collect())
                            .collect()
                    }
                })
                .collect();
            let mut ok = true;
            for (class, g) in structure.classes.iter().zip(&functionals) {
                if !class_functionals_independent(class, &ext, g)? {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let character = assemble_character(algebra, structure, &ext, &functionals)?;
            for a in structure.abelian_ideals() {
                if vanishes_on(&character, f, a)? {
                    return Err(Error::verification(
                        "socle_character",
                        "independent functionals vanish on an abelian minimal ideal",
                    ));
                }
            }
            return Ok(SocleCharacter {
                character,
                degree,
                functionals,
                canonical_choice: attempt == 0,
            });
        }
    }
    Err(Error::cap(
        "extension degree for the socle character",
        caps.ext_degree as u64 + 1,
        caps.ext_degree as u64,
    ))
}

/// Irreducible module with character `c`; every abelian minimal ideal must act nontrivially.
pub fn build_v0(
    restricted: &RestrictedLieAlgebra,
    structure: &Structure,
    c: &Character,
    caps: &Caps,
    rng: &mut Prng,
) -> Result<(Representation, Cluster)> {
    let out = irreducible_with_cluster(restricted, c, caps, rng)?;
    let f = restricted.field();
    for a in structure.abelian_ideals() {
        if out.module.acts_trivially(f, a)? {
            return Err(Error::verification("build_v0", "an abelian minimal ideal acts trivially on V0"));
        }
    }
    Ok((out.module, out.cluster))
}

/// Smallest composition factor of `V ⊗ K` for a minimal ideal `K` acting trivially on `V`;
/// `K` and every ideal in `keep` must act nontrivially on it.
pub fn tensor_absorb(
    algebra: &LieAlgebra,
    v: &Representation,
    k: &Subspace,
    keep: &[&Subspace],
    caps: &Caps,
    rng: &mut Prng,
) -> Result<Representation> {
    let f = algebra.field();
    let t = v.tensor(&algebra.ideal_module(k));
    let factor = smallest_factor(composition_series(&t, caps, rng)?)
        .ok_or_else(|| Error::verification("tensor_absorb", "empty tensor product"))?;
    if factor.acts_trivially(f, k)? {
        return Err(Error::verification("tensor_absorb", "absorbed ideal acts trivially on the factor"));
    }
    for s in keep {
        if factor.acts_trivially(f, s)? {
            return Err(Error::verification("tensor_absorb", "a previously nontrivial ideal became trivial"));
        }
    }
    Ok(factor)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionPath {
    /// Run on the given p-map.
    Restricted,
    /// Run on a p-envelope of this dimension and restricted back (experimental).
    Envelope { dim: usize },
}

#[derive(Clone, Debug)]
pub struct AbsorbStep {
    /// Index into the minimal ideals of the algebra the construction ran on.
    pub ideal: usize,
    pub skipped: bool,
    pub tensor_dim: usize,
    pub factor_dim: usize,
}

#[derive(Clone, Debug)]
pub struct ConstructionLog {
    pub path: ConstructionPath,
    pub socle: SocleCharacter,
    pub v0: Representation,
    pub cluster: Cluster,
    pub steps: Vec<AbsorbStep>,
    /// The normalized p-map the construction used.
    pub restricted: RestrictedLieAlgebra,
}

#[derive(Clone, Debug)]
pub struct IdealFlag {
    pub ideal: Subspace,
    pub abelian: bool,
    pub nontrivial: bool,
}

#[derive(Clone, Debug)]
pub struct FaithfulCertificate {
    pub module: Representation,
    pub flags: Vec<IdealFlag>,
    pub kernel: Subspace,
    pub witness: NortonWitness,
    pub log: ConstructionLog,
}

impl FaithfulCertificate {
    pub fn all_flags(&self) -> bool {
        self.flags.iter().all(|f| f.nontrivial)
    }
}

fn run_restricted(
    restricted: &RestrictedLieAlgebra,
    structure: &Structure,
    path: ConstructionPath,
    caps: &Caps,
    rng: &mut Prng,
) -> Result<(Representation, ConstructionLog)> {
    let algebra = restricted.algebra();
    let f = algebra.field();
    let normalized = restricted.normalize_on(&structure.asoc)?;
    if normalized.validate(100, rng).is_err() {
        return Err(Error::verification("normalize_pmap_on_asoc", "normalized p-map is invalid"));
    }
    if structure.asoc.vectors().iter().any(|a| normalized.pmap_eval(a).iter().any(|e| !e.is_zero())) {
        return Err(Error::verification("normalize_pmap_on_asoc", "p-map does not vanish on the socle"));
    }
    let socle = socle_character(algebra, structure, caps, rng)?;
    let (v0, cluster) = build_v0(&normalized, structure, &socle.character, caps, rng)?;
    let mut v = v0.clone();
    let mut steps = Vec::new();
    let mut keep: Vec<&Subspace> = structure.abelian_ideals().collect();
    for (idx, k) in structure.nonabelian_ideals() {
        if !v.acts_trivially(f, k)? {
            steps.push(AbsorbStep {
                ideal: idx,
                skipped: true,
                tensor_dim: 0,
                factor_dim: v.dim(),
            });
        } else {
            let tensor_dim = v.dim() * k.dim();
            v = tensor_absorb(algebra, &v, k, &keep, caps, rng)?;
            steps.push(AbsorbStep {
                ideal: idx,
                skipped: false,
                tensor_dim,
                factor_dim: v.dim(),
            });
        }
        keep.push(k);
    }
    Ok((
        v,
        ConstructionLog {
            path,
            socle,
            v0,
            cluster,
            steps,
            restricted: normalized,
        },
    ))
}

fn certify(
    algebra: &LieAlgebra,
    structure: &Structure,
    module: Representation,
    log: ConstructionLog,
    caps: &Caps,
    rng: &mut Prng,
) -> Result<FaithfulCertificate> {
    let f = algebra.field();
    let stage = match log.path {
        ConstructionPath::Restricted => "certificate",
        ConstructionPath::Envelope { .. } => "envelope",
    };
    if module.validate(algebra).is_err() {
        return Err(Error::verification(stage, "module fails the bracket relations"));
    }
    let flags = structure
        .minimal_ideals
        .iter()
        .zip(&structure.abelian)
        .map(|(m, &abelian)| {
            Ok(IdealFlag {
                ideal: m.clone(),
                abelian,
                nontrivial: !module.acts_trivially(f, m)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let kernel = module.kernel(f)?;
    if flags.iter().any(|fl| !fl.nontrivial) || !kernel.is_zero() {
        return Err(Error::verification(stage, "constructed module is not faithful"));
    }
    let witness = match is_irreducible(&module, caps, rng)? {
        Irreducibility::Irreducible(w) => w,
        Irreducibility::Reducible(_) => {
            return Err(Error::verification(stage, "constructed module is reducible"));
        }
    };
    Ok(FaithfulCertificate {
        module,
        flags,
        kernel,
        witness,
        log,
    })
}

/// A faithful irreducible module. With a p-map the construction runs on `L` itself; without one it
/// runs on a p-envelope and the result is re-verified as an `L`-module.
pub fn faithful_irreducible(
    algebra: &LieAlgebra,
    pmap: Option<&[Vec<Elem>]>,
    caps: &Caps,
    rng: &mut Prng,
) -> Result<FaithfulCertificate> {
    let structure = analyze(algebra, caps, rng)?;
    if algebra.dim() == 0 {
        return Err(Error::InvalidInput("the zero algebra has no faithful irreducible module".into()));
    }
    match pmap {
        Some(pmap) => {
            let restricted = RestrictedLieAlgebra::new(algebra.clone(), pmap.to_vec(), caps)?;
            if let Err(v) = restricted.validate(100, rng) {
                return Err(Error::InvalidInput(format!("p-map fails {v:?}")));
            }
            let (module, log) = run_restricted(&restricted, &structure, ConstructionPath::Restricted, caps, rng)?;
            certify(algebra, &structure, module, log, caps, rng)
        }
        None => {
            let env = p_envelope(algebra, caps)?;
            let g = env.restricted.algebra();
            let g_structure = analyze(g, caps, rng)?;
            let path = ConstructionPath::Envelope { dim: g.dim() };
            let (vg, log) = run_restricted(&env.restricted, &g_structure, path, caps, rng)?;
            let basis: Vec<Vec<Elem>> = (0..env.ideal_dim).map(|i| g.basis_vector(i)).collect();
            let module = vg.restrict_to(algebra.field(), &basis)?;
            certify(algebra, &structure, module, log, caps, rng)
        }
    }
}

pub const CRITERION_CAVEAT: &str = "r <= dim A for every abelian minimal ideal characterizes faithful irreducible \
modules over algebraically closed fields; over a finite field this report describes the pattern of \
multiplicities only and is not decisive";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVerdict {
    pub multiplicity: usize,
    pub dim: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub classes: Vec<ClassVerdict>,
    pub verdict: bool,
    pub caveat: &'static str,
}

pub fn criterion_from(structure: &Structure) -> CriterionReport {
    let classes: Vec<ClassVerdict> = structure
        .classes
        .iter()
        .map(|c| ClassVerdict {
            multiplicity: c.multiplicity(),
            dim: c.rep_dim(),
            pass: c.multiplicity() <= c.rep_dim(),
        })
        .collect();
    CriterionReport {
        verdict: classes.iter().all(|c| c.pass),
        classes,
        caveat: CRITERION_CAVEAT,
    }
}

pub fn aclosed_criterion(algebra: &LieAlgebra, caps: &Caps, rng: &mut Prng) -> Result<CriterionReport> {
    Ok(criterion_from(&analyze(algebra, caps, rng)?))
}

/// `L ⋉ V` with basis `b_1, .., b_n, v_1, .., v_m` and `[x, v] = x v`.
pub fn split_extension(algebra: &LieAlgebra, v: &Representation) -> Result<LieAlgebra> {
    let f = algebra.field();
    if v.field() != f || v.n_gens() != algebra.dim() {
        return Err(Error::FieldMismatch("module must be over the algebra's own field".into()));
    }
    let n = algebra.dim();
    let m = v.dim();
    let d = n + m;
    let mut constants = vec![Elem::ZERO; d * d * d];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                constants[(i * d + j) * d + k] = algebra.constant(i, j, k);
            }
        }
        for c in 0..m {
            for r in 0..m {
                let a = v.matrix(i).get(r, c);
                constants[(i * d + n + c) * d + n + r] = a;
                constants[((n + c) * d + i) * d + n + r] = f.neg(a);
            }
        }
    }
    let ext = LieAlgebra::new(f, d, constants)?;
    check_algebra(&ext)?;
    Ok(ext)
}

#[derive(Clone, Debug)]
pub struct Summand {
    /// `None` for `V0`, otherwise the index of the non-abelian minimal ideal whose adjoint
    /// module this is.
    pub ideal: Option<usize>,
    pub module: Representation,
    pub kept: bool,
}

#[derive(Clone, Debug)]
pub struct CoverReport {
    pub algebra: LieAlgebra,
    pub module: Representation,
    pub summands: Vec<Summand>,
    pub criterion: CriterionReport,
}

/// `L` as a quotient of `M = L ⋉ V` for a faithful completely reducible `V` without redundant
/// summands.
pub fn faithful_cover(
    algebra: &LieAlgebra,
    pmap: Option<&[Vec<Elem>]>,
    caps: &Caps,
    rng: &mut Prng,
) -> Result<CoverReport> {
    let f = algebra.field().clone();
    let n = algebra.dim();
    let mut summands: Vec<Summand> = Vec::new();
    if n > 0 {
        let structure = analyze(algebra, caps, rng)?;
        match pmap {
            Some(pmap) => {
                let restricted = RestrictedLieAlgebra::new(algebra.clone(), pmap.to_vec(), caps)?;
                if let Err(v) = restricted.validate(100, rng) {
                    return Err(Error::InvalidInput(format!("p-map fails {v:?}")));
                }
                let normalized = restricted.normalize_on(&structure.asoc)?;
                let socle = socle_character(algebra, &structure, caps, rng)?;
                let (v0, _) = build_v0(&normalized, &structure, &socle.character, caps, rng)?;
                summands.push(Summand {
                    ideal: None,
                    module: v0,
                    kept: true,
                });
                for (idx, k) in structure.nonabelian_ideals() {
                    summands.push(Summand {
                        ideal: Some(idx),
                        module: algebra.ideal_module(k),
                        kept: true,
                    });
                }
            }
            None => {
                let cert = faithful_irreducible(algebra, None, caps, rng)?;
                summands.push(Summand {
                    ideal: None,
                    module: cert.module,
                    kept: true,
                });
            }
        }
    }
    let sum_of = |s: &[Summand]| {
        s.iter()
            .filter(|x| x.kept)
            .fold(Representation::trivial(&f, n, 0), |acc, x| acc.direct_sum(&x.module))
    };
    if !sum_of(&summands).is_faithful(&f)? {
        return Err(Error::verification("faithful_cover", "direct sum of summands is not faithful"));
    }
    for i in 0..summands.len() {
        summands[i].kept = false;
        if !sum_of(&summands).is_faithful(&f)? {
            summands[i].kept = true;
        }
    }
    let module = sum_of(&summands);
    let m = split_extension(algebra, &module)?;
    let criterion = aclosed_criterion(&m, caps, rng)?;
    Ok(CoverReport {
        algebra: m,
        module,
        summands,
        criterion,
    })
}
