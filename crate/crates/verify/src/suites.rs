use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use pgl3_lattices::building::{act, covolume, orbit_bfs, quotient_graph, s4_vertex_type, OrbitSearch, ProjElement, S4Kind, VertexClass};
use pgl3_lattices::elimination::{eliminate_centralizing, eliminate_inverting, Solution, UniPoly};
use pgl3_lattices::group::{describe_linear, describe_projective};
use pgl3_lattices::hermitian::*;
use pgl3_lattices::named::*;
use pgl3_lattices::{Mat3, QuadRat};

use crate::report::{Check, Report};
use crate::VerifyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    LatticeCounts,
    IsometryGroups,
    Superlattices,
    IndexEight,
    BuildingGm,
    BuildingGl,
    Covolume,
    Elimination,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::LatticeCounts,
        Suite::IsometryGroups,
        Suite::Superlattices,
        Suite::IndexEight,
        Suite::BuildingGm,
        Suite::BuildingGl,
        Suite::Covolume,
        Suite::Elimination,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LatticeCounts => "lattice-counts",
            Suite::IsometryGroups => "isometry-groups",
            Suite::Superlattices => "superlattices",
            Suite::IndexEight => "index-eight",
            Suite::BuildingGm => "building-gm",
            Suite::BuildingGl => "building-gl",
            Suite::Covolume => "covolume",
            Suite::Elimination => "elimination",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, VerifyError> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| VerifyError::Usage(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub radius: u32,
    pub precision: u32,
}

impl Default for Options {
    fn default() -> Self {
        Options { radius: 3, precision: 64 }
    }
}

type Checks = Result<Vec<Check>, VerifyError>;

pub fn run_suite(suite: Suite, opts: &Options) -> Result<Report, VerifyError> {
    if opts.precision == 0 {
        return Err(VerifyError::Usage("precision must be positive".into()));
    }
    let checks = match suite {
        Suite::LatticeCounts => lattice_counts()?,
        Suite::IsometryGroups => isometry_groups()?,
        Suite::Superlattices => superlattice_checks()?,
        Suite::IndexEight => index_eight()?,
        Suite::BuildingGm => building_gm(opts)?,
        Suite::BuildingGl => building_gl(opts)?,
        Suite::Covolume => covolume_checks()?,
        Suite::Elimination => elimination()?,
        Suite::All => {
            let mut all = Vec::new();
            for s in Suite::EACH {
                all.extend(run_suite(s, opts)?.checks);
            }
            all
        }
    };
    Ok(Report { suite: suite.name().into(), checks, wall_time: None })
}

fn join<T: fmt::Display>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn lattice_counts() -> Checks {
    let (l, m) = (lattice_l(), lattice_m());
    let mut out = Vec::new();
    for (n, want) in [(2, 42), (3, 56), (4, 84), (5, 168), (6, 112), (7, 336)] {
        out.push(Check::new(&format!("L.norm{n}.count"), "L short vectors", want, enumerate_norm(&l, n)?.len()));
    }
    for (n, want) in [(2, 0), (3, 14), (7, 42)] {
        out.push(Check::new(&format!("M.norm{n}.count"), "M basic properties", want, enumerate_norm(&m, n)?.len()));
    }
    out.push(Check::new("L.det", "L unimodular", 1, l.det()));
    out.push(Check::new("M.det", "M basic properties", 7, m.det()));
    Ok(out)
}

fn ambient_group(lat: &HermLattice) -> Result<Vec<Mat3>, VerifyError> {
    Ok(isometry_group(lat)?.iter().map(|u| u.ambient(lat)).collect())
}

fn isometry_groups() -> Checks {
    let (l, m) = (lattice_l(), lattice_m());
    let gl = ambient_group(&l)?;
    let gm = ambient_group(&m)?;
    let dl = describe_linear(&gl)?;
    let dm = describe_linear(&gm)?;
    let gl_set: BTreeSet<&Mat3> = gl.iter().collect();
    let fs = frames(&l)?;
    let frame_ok = fs.iter().all(|f| {
        f.roots.len() == 6
            && f.roots.iter().all(|r| f.roots.contains(&-r))
            && f.roots.iter().all(|r| f.roots.iter().all(|s| s == r || *s == -r || l.inner(r, s).is_zero()))
    });
    let root_sets: BTreeSet<BTreeSet<HermVector>> = fs.iter().map(|f| f.roots.iter().cloned().collect()).collect();
    let frame_orbit: BTreeSet<BTreeSet<HermVector>> =
        gl.iter().map(|g| fs[0].roots.iter().map(|r| HermVector(g.mul_vec(&r.0))).collect()).collect();
    let proj = describe_projective(&isom_l_projective()?)?;
    Ok(vec![
        Check::new("IsomL.order", "Isom L", 336, dl.order),
        Check::new("IsomL.name", "Isom L", "L3(2)x2", dl.recognized_name),
        Check::new("PIsomL.name", "Isom L", "L3(2)", proj.recognized_name),
        Check::new("IsomM.order", "M basic properties", 42, dm.order),
        Check::new("IsomM.name", "M basic properties", "2xF21", dm.recognized_name),
        Check::new("IsomM.subset", "M basic properties", true, gm.iter().all(|g| gl_set.contains(g))),
        Check::new("IsomO3.order", "unit lattice", 48, isometry_group(&lattice_o3())?.len()),
        Check::new("frames.count", "roots and frames", 7, fs.len()),
        Check::new("frames.shape", "roots and frames", true, frame_ok),
        Check::new("frames.transitive", "roots and frames", true, frame_orbit == root_sets),
    ])
}

fn superlattice_checks() -> Checks {
    let sups = superlattices(&lattice_m())?;
    let others: Vec<usize> = sups.iter().filter(|s| !s.is_l).map(|s| s.norm_one_count).collect();
    let two = num_rational::BigRational::from_integer(2.into());
    let mut min_two = 0;
    for s in &sups {
        let short = vectors_up_to(&s.lattice, &two)?;
        if short.first().is_some_and(|p| p.norm == two) {
            min_two += 1;
        }
    }
    Ok(vec![
        Check::new("M.superlattices", "superlattices of M", 8, sups.len()),
        Check::new("M.superlattices.min2", "superlattices of M", 1, min_two),
        Check::new("M.superlattices.isL", "superlattices of M", 1, sups.iter().filter(|s| s.is_l).count()),
        Check::new("M.superlattices.norm1", "superlattices of M", join([6; 7]), join(others)),
    ])
}

fn index_eight() -> Checks {
    let (l, m) = (lattice_l(), lattice_m());
    let subs = index7_sublattices(&l)?;
    let count = |c: PointClass| subs.iter().filter(|s| s.class == c).count();
    let rank_one: Vec<&Index7Sublattice> = subs.iter().filter(|s| s.reduced_rank == 1).collect();
    let mut isometric = 0;
    for s in &rank_one {
        if !isometries_between(&m, &s.lattice)?.is_empty() {
            isometric += 1;
        }
    }
    let copies = m_copies_in_l(&l)?;
    let mut reached = BTreeSet::new();
    for g in ambient_group(&l)? {
        let b = copies[0].lattice.basis().clone().map(|v| HermVector(g.mul_vec(&v.0)));
        let img = HermLattice::new(b, copies[0].lattice.form_scale().clone())?;
        if let Some(k) = copies.iter().position(|c| c.lattice.same_lattice(&img)) {
            reached.insert(k);
        }
    }
    Ok(vec![
        Check::new("L.index7.rank1", "index eight", 8, rank_one.len()),
        Check::new("L.index7.isometric_to_M", "index eight", 8, isometric),
        Check::new("L.points", "index eight", "8/28/21", format!("{}/{}/{}", count(PointClass::Isotropic), count(PointClass::Plus), count(PointClass::Minus))),
        Check::new("L.copies_of_M.transitive", "index eight", 8, reached.len()),
    ])
}

fn search(gens: &[ProjElement], start: &VertexClass, opts: &Options) -> Result<OrbitSearch, VerifyError> {
    if opts.radius < 2 {
        return Err(VerifyError::Usage("building suites need radius at least 2".into()));
    }
    Ok(orbit_bfs(gens, start, opts.radius, opts.precision)?)
}

fn covolume_of(orders: &[usize]) -> Result<String, VerifyError> {
    let o: Vec<i64> = orders.iter().map(|&n| n as i64).collect();
    Ok(covolume(&o)?.to_string())
}

fn building_gm(opts: &Options) -> Checks {
    let p = opts.precision;
    let s = search(&gamma_m_generators(), &vertex_v(), opts)?;
    let t = s.table(Some(&isom_m_projective()?), p)?;
    let q = quotient_graph(&s)?;
    let lam_ratio = &QuadRat::lambda() / &QuadRat::lambda_bar();
    let scalar = |m: Mat3| m.as_scalar().map_or("not scalar".to_string(), |c| c.to_string());
    let (pv, lv) = sigma_fixed_neighbors()?;
    let t3l = act(&tau().pow(3), &lv, p)?;
    let a = alpha_m();
    let v = vertex_v();
    let cycle = act(&a, &v, p)? == pv && act(&a, &pv, p)? == t3l && act(&a, &t3l, p)? == v;
    let tri = beta_m_triangle();
    let b = beta_m();
    let mut rotates = true;
    for i in 0..3 {
        rotates &= act(&b, &tri[i], p)? == tri[(i + 2) % 3];
    }
    Ok(vec![
        Check::new("GM.vertex_orbits", "Gamma_M transitivity", 1, t.vertex_orbits),
        Check::new("GM.edge_orbits", "Gamma_M transitivity", 1, t.edge_orbits),
        Check::new("GM.triangle_orbits", "Gamma_M transitivity", 1, t.triangle_orbits),
        Check::new("GM.stabilizer", "Gamma_M transitivity", "21 F21", format!("{} {}", t.stabilizers[0].order, t.stabilizers[0].recognized_name)),
        Check::new("GM.covolume", "Gamma_M covolume", "1/21", covolume_of(&t.stabilizer_orders)?),
        Check::new("GM.quotient_nodes", "Gamma_M transitivity", 1, q.nodes.len()),
        Check::new("beta_M.cube", "beta_M", lam_ratio, scalar(beta_m().matrix.pow(3)?)),
        Check::new("beta_M.triangle", "beta_M", true, rotates),
        Check::new("sigma.cube", "sigma and tau", "1", scalar(sigma().matrix.pow(3)?)),
        Check::new("tau.seventh", "sigma and tau", "1", scalar(tau().matrix.pow(7)?)),
        Check::new("tau3l.adjacent_p", "alpha triangle", true, pv.is_adjacent(&t3l)),
        Check::new("alpha_M.cycle", "alpha triangle", true, cycle),
    ])
}

fn building_gl(opts: &Options) -> Checks {
    let p = opts.precision;
    let s = search(&gamma_l_generators()?, &vertex_c(), opts)?;
    let t = s.table(Some(&isom_l_projective()?), p)?;
    let bl = beta_l();
    let near_d = ['A', 'B', 'F', 'G'].iter().all(|&c| s.same_orbit(&strip_vertex(c), &vertex_d()) == Some(true));
    let e_c = s.same_orbit(&strip_vertex('E'), &vertex_c()) == Some(true);

    let s4 = frame_s4()?;
    let d = vertex_d();
    let d_type = s4_vertex_type(&s4, &d, p)?;
    let mut fixed = Vec::new();
    for n in d.neighbors() {
        let mut inv = true;
        for g in &s4 {
            inv &= act(g, &n, p)? == n;
        }
        if inv {
            fixed.push(s4_vertex_type(&s4, &n, p)?);
        }
    }
    let mut kinds: Vec<&str> = fixed.iter().map(|t| kind_name(t.kind)).collect();
    kinds.sort();
    let models = model_types(p)?;
    Ok(vec![
        Check::new("GL.vertex_orbits", "Gamma_L orbits", 2, t.vertex_orbits),
        Check::new("GL.C_D_distinct", "Gamma_L orbits", true, s.same_orbit(&vertex_c(), &d) == Some(false)),
        Check::new("GL.stabilizers", "Gamma_L orbits", "168,24", join(&t.stabilizer_orders)),
        Check::new("GL.stabilizer_names", "Gamma_L orbits", "L3(2),S4", join(t.stabilizers.iter().map(|g| &g.recognized_name))),
        Check::new("GL.covolume", "Gamma_L covolume", "1/21", covolume_of(&t.stabilizer_orders)?),
        Check::new("beta_L.D", "strip around C and D", strip_vertex('B'), act(&bl, &d, p)?),
        Check::new("beta_L.E", "strip around C and D", strip_vertex('C'), act(&bl, &strip_vertex('E'), p)?),
        Check::new("strip.orbits", "strip around C and D", true, near_d && e_c),
        Check::new("S4.models", "S4 types", "0,l,p", join(models.iter().map(|(k, _)| kind_name(*k)))),
        Check::new("S4.model_indices", "S4 types", "1,2,4", join(models.iter().map(|(_, i)| i))),
        Check::new("S4.D", "S4 types", "0", kind_name(d_type.kind)),
        Check::new("S4.D_neighbors", "S4 types", "l,p", kinds.join(",")),
    ])
}

fn kind_name(k: S4Kind) -> &'static str {
    match k {
        S4Kind::Zero => "0",
        S4Kind::L => "l",
        S4Kind::P => "p",
    }
}

/// Types and indices of the three model lattices under signed permutations.
fn model_types(precision: u32) -> Result<Vec<(S4Kind, u64)>, VerifyError> {
    let gens: Vec<ProjElement> = [[[0, 0, 1], [1, 0, 0], [0, 1, 0]], [[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[-1, 0, 0], [0, 1, 0], [0, 0, 1]]]
        .into_iter()
        .map(|m| ProjElement::new(Mat3::from_ints(m)))
        .collect::<Result<_, _>>()?;
    let models = [[[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[2, 1, 1], [0, 1, 0], [0, 0, 1]], [[2, 0, 1], [0, 2, 1], [0, 0, 1]]];
    models
        .into_iter()
        .map(|rows| {
            let t = s4_vertex_type(&gens, &VertexClass::from_rows(rows)?, precision)?;
            Ok((t.kind, t.index))
        })
        .collect()
}

fn covolume_checks() -> Checks {
    Ok(vec![
        Check::new("covolume.GL", "Gamma_L covolume", "1/21", covolume(&[168, 24])?),
        Check::new("covolume.GM", "Gamma_M covolume", "1/21", covolume(&[21])?),
    ])
}

fn sigma_power(s: &Solution) -> String {
    match s.gamma_sigma_power {
        Some(0) => "1".into(),
        Some(1) => "sigma".into(),
        Some(_) => "sigma^-1".into(),
        None => "none".into(),
    }
}

fn elimination() -> Checks {
    let c = eliminate_centralizing()?;
    let cubic = UniPoly::from_ints(&[0, -1, 0, 1]);
    let by_b: Vec<String> = c.solutions.iter().map(|s| format!("b={}:{}", s.b, sigma_power(s))).collect();
    let i = eliminate_inverting()?;
    let zero = i.solutions.iter().find(|s| s.b.is_zero());
    let spurious: Vec<&Solution> = i.solutions.iter().filter(|s| !s.b.is_zero()).collect();
    Ok(vec![
        Check::new("centralizing.relation", "centralizing case", &cubic, &c.lowest_residual),
        Check::new("centralizing.roots", "centralizing case", "-1,0,1", join(&c.candidate_roots)),
        Check::new("centralizing.b0_fails", "centralizing case", "0", join(&c.rejected_roots)),
        Check::new("centralizing.gamma", "centralizing case", "b=-1:sigma^-1,b=1:sigma", by_b.join(",")),
        Check::new("centralizing.fix_v", "centralizing case", true, c.solutions.iter().all(|s| s.fixes_v)),
        Check::new("inverting.f_degree", "inverting case", 1, i.f.degree().map_or(-1, |d| d as i64)),
        Check::new("inverting.f_zero", "inverting case", true, i.f_zero_implies_g_nonzero),
        Check::new("inverting.b0.a", "inverting case", 1, zero.map_or("none".to_string(), |s| s.a.to_string())),
        Check::new("inverting.b0.alpha_M", "inverting case", true, zero.is_some_and(|s| s.equals_alpha_m)),
        Check::new("inverting.gcd_degree", "inverting case", 1, i.gcd_without_b.degree().map_or(-1, |d| d as i64)),
        Check::new("inverting.spurious.count", "inverting case", 1, spurious.len()),
        Check::new("inverting.spurious.integral_odd_det", "inverting case", true, spurious.iter().all(|s| s.integral_odd_det)),
        Check::new("inverting.spurious.fixes_v", "inverting case", true, spurious.iter().all(|s| s.fixes_v)),
    ])
}

/// Quotient graph of the trusted ball for `gl` or `gm`.
pub fn graph_search(group: &str, opts: &Options) -> Result<(String, OrbitSearch), VerifyError> {
    let s = match group {
        "gl" => search(&gamma_l_generators()?, &vertex_c(), opts)?,
        "gm" => search(&gamma_m_generators(), &vertex_v(), opts)?,
        _ => return Err(VerifyError::Usage(format!("unknown group '{group}', expected gl or gm"))),
    };
    Ok((group.to_uppercase(), s))
}
