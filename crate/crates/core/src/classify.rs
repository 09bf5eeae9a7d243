//! Classification of finite SI medial quandles: the latin / reductive /
//! two-element-projection trichotomy, exhaustive enumeration of SI medial
//! quandles by order, the classical family lists, and desk-scale reports.

use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{automorphisms, subgroup_generated, transversal, FinAbGroup, GroupElem, GroupHom, LaurentModule};
use crate::config::{RunConfig, VERSION};
use crate::congruence::{lattice_profile, all_congruences, monolith, Congruence};
use crate::construct::{alexander, klein_module, projection_quandle, SiqSpec};
use crate::error::{Error, Result};
use crate::iso::{cyclic_iso_criterion, fingerprint, quandle_isomorphic, InvariantFingerprint};
use crate::mesh::{canonical_mesh, AffineMesh};
use crate::quandle::Quandle;
use crate::search::{enumerate_medial, IsoClasses, MeshFilter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SiClass {
    Latin,
    Reductive,
    TwoElementProjection,
    #[serde(rename = "NOT-SI")]
    NotSi,
}

impl fmt::Display for SiClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SiClass::Latin => "latin",
            SiClass::Reductive => "reductive",
            SiClass::TwoElementProjection => "two-element-projection",
            SiClass::NotSi => "NOT-SI",
        })
    }
}

/// A class label with the facts that decided it.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub class: SiClass,
    pub monolith: Option<Congruence>,
    pub orbit_count: usize,
    pub reductivity: Option<usize>,
    pub latin: bool,
    pub quasi_reductive: bool,
    /// Index of `φ(A)` in the largest orbit's module `A`.
    pub main_orbit_kappa: usize,
}

/// Classifies a finite medial quandle.
pub fn classify(q: &Quandle) -> Result<Classification> {
    q.require_medial()?;
    let mon = monolith(q);
    let latin = q.is_latin();
    let reductivity = q.reductivity_degree();
    let (mesh, _) = canonical_mesh(q)?;
    let main = (0..mesh.len())
        .max_by_key(|&i| (mesh.group(i).order(), std::cmp::Reverse(i)))
        .expect("non-empty quandle");
    let main_orbit_kappa = mesh.group(main).order() / mesh.phi(main, main).image().len();
    let class = match &mon {
        None => SiClass::NotSi,
        Some(_) if latin => SiClass::Latin,
        Some(_) if q.size() == 2 => SiClass::TwoElementProjection,
        Some(_) if reductivity.is_some() => SiClass::Reductive,
        Some(_) => {
            return Err(Error::ConsistencyFailure(
                "finite SI medial quandle that is neither latin nor reductive".into(),
            ))
        }
    };
    Ok(Classification {
        class,
        monolith: mon,
        orbit_count: mesh.len(),
        reductivity,
        latin,
        quasi_reductive: q.is_quasi_reductive(),
        main_orbit_kappa,
    })
}

/// How an enumerated representative was constructed.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Provenance {
    Alexander { module: LaurentModule },
    Siq { spec: SiqSpec },
}

impl Provenance {
    pub fn quandle(&self) -> Result<Quandle> {
        match self {
            Provenance::Alexander { module } => alexander(module.group(), module.t()),
            Provenance::Siq { spec } => spec.quandle(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SiRepresentative {
    pub quandle: Quandle,
    pub provenance: Provenance,
    pub class: SiClass,
    pub fingerprint: InvariantFingerprint,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub latin: usize,
    pub reductive: usize,
    pub two_element_projection: usize,
    pub quasi_reductive_non_reductive: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    pub version: String,
    pub config_hash: String,
    pub seed: u64,
    pub order: usize,
    pub involutory_only: bool,
    /// Set when some module was skipped because of a cap; the list is then
    /// best-effort rather than complete.
    pub truncated: bool,
    pub skipped: Vec<String>,
    pub counts: ClassCounts,
    pub representatives: Vec<SiRepresentative>,
}

#[derive(Clone, Debug, Default)]
pub struct SiOptions {
    /// Restrict to involutory quandles (only modules with `t² = 1` are scanned).
    pub involutory_only: bool,
}

/// All `k`-element index subsets of `0..n`, in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// SI modules `(A, t)` with `|A| ≤ n`, in deterministic order, plus the
/// groups skipped because of caps.
fn si_modules(n: usize, opts: &SiOptions, cfg: &RunConfig) -> (Vec<LaurentModule>, Vec<String>) {
    let groups: Vec<FinAbGroup> = (2..=n as u64).flat_map(FinAbGroup::all_of_order).collect();
    let results: Vec<std::result::Result<Vec<LaurentModule>, String>> = groups
        .par_iter()
        .map(|g| {
            let auts = automorphisms(g, cfg.caps.aut).map_err(|e| format!("{g}: {e}"))?;
            let mut out = Vec::new();
            for t in auts {
                if opts.involutory_only && !t.pow(2).expect("endomorphism").is_identity() {
                    continue;
                }
                let module = LaurentModule::new(g.clone(), t).expect("automorphism");
                match module.is_si(cfg.caps.submodule) {
                    Ok(true) => out.push(module),
                    Ok(false) => {}
                    Err(e) => return Err(format!("{g}: {e}")),
                }
            }
            Ok(out)
        })
        .collect();
    let mut modules = Vec::new();
    let mut skipped = Vec::new();
    for r in results {
        match r {
            Ok(ms) => modules.extend(ms),
            Err(s) => skipped.push(s),
        }
    }
    (modules, skipped)
}

/// Candidate (quandle, provenance) pairs of order `n` built on one module;
/// every candidate returned has been verified SI by a direct monolith test.
fn candidates_for(module: &LaurentModule, n: usize) -> Vec<(Quandle, Provenance)> {
    let a = module.group();
    let m = a.order();
    let phi = module.phi();
    let image = phi.image();
    let mut out = Vec::new();
    if m == n {
        let q = alexander(a, module.t()).expect("module automorphism");
        if monolith(&q).is_some() {
            out.push((q, Provenance::Alexander { module: module.clone() }));
        }
        return out;
    }
    let r = image.len();
    if r == m || !(n - m).is_multiple_of(r) {
        return out;
    }
    let k = (n - m) / r;
    let reps = transversal(a, &image).expect("subgroup of A");
    for subset in combinations(reps.len(), k) {
        let c: Vec<GroupElem> = subset.iter().map(|&i| reps[i].clone()).collect();
        let mut gens = c.clone();
        gens.extend(image.elements());
        if !subgroup_generated(a, &gens).expect("elements of A").is_full() {
            continue;
        }
        let spec = match SiqSpec::new(module.clone(), c) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let q = spec.quandle().expect("valid siq spec");
        if monolith(&q).is_some() {
            out.push((q, Provenance::Siq { spec }));
        }
    }
    out
}

/// Enumerates SI medial quandles of order `n` up to isomorphism: connected
/// ones as Alexander quandles of SI modules, the others as `siq(A, t, C)`.
pub fn enumerate_si(n: usize, opts: &SiOptions, cfg: &RunConfig) -> Result<EnumerationReport> {
    cfg.install(|| enumerate_si_inner(n, opts, cfg))
}

fn enumerate_si_inner(n: usize, opts: &SiOptions, cfg: &RunConfig) -> Result<EnumerationReport> {
    let (modules, skipped) = if n >= 2 {
        si_modules(n, opts, cfg)
    } else {
        (Vec::new(), Vec::new())
    };
    let per_module: Vec<Vec<(Quandle, Provenance)>> =
        modules.par_iter().map(|m| candidates_for(m, n)).collect();
    let mut classes = IsoClasses::new();
    let mut provenance = Vec::new();
    for (q, p) in per_module.into_iter().flatten() {
        if opts.involutory_only && !q.is_involutory() {
            continue;
        }
        if classes.insert(q).1 {
            provenance.push(p);
        }
    }
    let mut counts = ClassCounts::default();
    let mut representatives = Vec::with_capacity(provenance.len());
    for (q, p) in classes.into_reps().into_iter().zip(provenance) {
        let c = classify(&q)?;
        match c.class {
            SiClass::Latin => counts.latin += 1,
            SiClass::Reductive => counts.reductive += 1,
            SiClass::TwoElementProjection => counts.two_element_projection += 1,
            SiClass::NotSi => {
                return Err(Error::ConsistencyFailure("enumerated candidate is not SI".into()))
            }
        }
        if !c.latin && c.reductivity.is_none() && c.quasi_reductive {
            counts.quasi_reductive_non_reductive += 1;
        }
        representatives.push(SiRepresentative {
            fingerprint: fingerprint(&q, cfg.caps.lattice),
            quandle: q,
            provenance: p,
            class: c.class,
        });
    }
    Ok(EnumerationReport {
        version: VERSION.to_string(),
        config_hash: cfg.hash(),
        seed: cfg.seed,
        order: n,
        involutory_only: opts.involutory_only,
        truncated: !skipped.is_empty(),
        skipped,
        counts,
        representatives,
    })
}

/// Strictly 2-reductive SI medial quandles of order `n`, found by a direct
/// search over meshes whose homomorphisms all vanish (which is exactly the
/// 2-reductive case). Such a quandle is SI only if one orbit `A` is
/// non-trivial and the remaining singleton orbits carry distinct constants
/// generating `A`, so the search runs over those meshes and tests SI
/// directly on each table.
pub fn two_reductive_si(n: usize) -> Vec<Quandle> {
    let mut classes = IsoClasses::new();
    for m in 2..n {
        for a in FinAbGroup::all_of_order(m as u64) {
            let elems: Vec<GroupElem> = a.elements().collect();
            for subset in combinations(m, n - m) {
                let c: Vec<GroupElem> = subset.iter().map(|&i| elems[i].clone()).collect();
                if !subgroup_generated(&a, &c).expect("elements of A").is_full() {
                    continue;
                }
                let q = zero_phi_mesh(&a, &c).sum().expect("valid mesh").quandle().clone();
                if q.reductivity_degree() == Some(2) && monolith(&q).is_some() {
                    classes.insert(q);
                }
            }
        }
    }
    classes.into_reps()
}

/// The mesh over `(A, 1, 1, …)` with every homomorphism zero and the
/// singleton constants `c_{i,0} = c[i-1]`.
fn zero_phi_mesh(a: &FinAbGroup, c: &[GroupElem]) -> AffineMesh {
    let one = FinAbGroup::trivial();
    let k = c.len() + 1;
    let groups: Vec<FinAbGroup> = (0..k).map(|i| if i == 0 { a.clone() } else { one.clone() }).collect();
    let phi = (0..k)
        .map(|i| (0..k).map(|j| GroupHom::zero(&groups[i], &groups[j])).collect())
        .collect();
    let cs = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if j == 0 && i > 0 { c[i - 1].clone() } else { groups[j].zero() })
                .collect()
        })
        .collect();
    AffineMesh::new(groups, phi, cs).expect("zero homomorphisms satisfy the mesh conditions")
}

fn prime_powers_below(n: usize) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for q in 2..n as u64 {
        let p = (2..=q).find(|d| q % d == 0).expect("q ≥ 2");
        let mut r = q;
        let mut k = 0;
        while r % p == 0 {
            r /= p;
            k += 1;
        }
        if r == 1 {
            out.push((p, k));
        }
    }
    out
}

/// `siq(Z_{p^k}, 1, C)` over all `C` of size `n - p^k` containing a unit,
/// up to isomorphism.
pub fn two_reductive_family(n: usize) -> Vec<Quandle> {
    let mut classes = IsoClasses::new();
    for (p, k) in prime_powers_below(n) {
        let m = p.pow(k) as usize;
        if n - m > m {
            continue;
        }
        for subset in combinations(m, n - m) {
            if !subset.iter().any(|&x| !(x as u64).is_multiple_of(p)) {
                continue;
            }
            let c: Vec<i64> = subset.iter().map(|&x| x as i64).collect();
            let q = SiqSpec::cyclic(m as u64, 1, &c)
                .and_then(|s| s.quandle())
                .expect("family member is a valid siq");
            classes.insert(q);
        }
    }
    classes.into_reps()
}

/// The four involutory families of order `n`: `(Z_2, 1)`, `(Z_{p^k}, −1)`
/// for odd `p`, `siq(Z_{2^k}, −1, {1})` and `siq(Z_{2^k}, −1, {0, 1})`.
pub fn involutory_family(n: usize) -> Vec<Quandle> {
    let mut out = Vec::new();
    if n == 2 {
        out.push(projection_quandle(2));
    }
    if n % 2 == 1 && prime_powers_below(n + 1).iter().any(|&(p, k)| p.pow(k) as usize == n) {
        out.push(crate::construct::alexander_cyclic(n as u64, -1).expect("-1 is a unit"));
    }
    for k in 1..8u32 {
        let m = 1usize << k;
        if 3 * m / 2 == n {
            out.push(SiqSpec::cyclic(m as u64, -1, &[1]).and_then(|s| s.quandle()).expect("valid"));
        }
        if 2 * m == n {
            out.push(SiqSpec::cyclic(m as u64, -1, &[0, 1]).and_then(|s| s.quandle()).expect("valid"));
        }
    }
    out
}

/// Whether two lists are equal as sets of isomorphism classes (each list is
/// assumed free of internal duplicates).
pub fn same_iso_classes(xs: &[Quandle], ys: &[Quandle]) -> bool {
    xs.len() == ys.len() && xs.iter().all(|x| ys.iter().any(|y| quandle_isomorphic(x, y).is_some()))
}

/// Non-connected Alexander quandles of order `≤ max` that are SI.
pub fn nonconnected_si_alexander(max: usize, aut_cap: usize) -> Result<Vec<(FinAbGroup, GroupHom)>> {
    let groups: Vec<FinAbGroup> = (2..=max as u64).flat_map(FinAbGroup::all_of_order).collect();
    let found: Vec<Result<Vec<(FinAbGroup, GroupHom)>>> = groups
        .par_iter()
        .map(|g| {
            let mut out = Vec::new();
            for t in automorphisms(g, aut_cap)? {
                let phi = GroupHom::identity(g).sub(&t)?;
                if phi.is_surjective() {
                    continue;
                }
                let q = alexander(g, &t)?;
                if monolith(&q).is_some() {
                    out.push((g.clone(), t));
                }
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for f in found {
        out.extend(f?);
    }
    Ok(out)
}

/// The size-6 and size-8 pairs of SI strictly 3-reductive quandles.
pub fn small_pairs() -> Result<[(SiqSpec, SiqSpec); 2]> {
    let klein = klein_module();
    let g = klein.group().clone();
    let e10 = g.reduce(&[1, 0])?;
    Ok([
        (SiqSpec::cyclic(4, 3, &[1])?, SiqSpec::new(klein.clone(), vec![e10.clone()])?),
        (SiqSpec::cyclic(4, 3, &[0, 1])?, SiqSpec::new(klein, vec![g.zero(), e10])?),
    ])
}

/// The pair `siq(Z_49, 43, {1,3,4})` and `siq(Z_49, 43, {2,5,6})`.
pub fn z49_pair() -> Result<(SiqSpec, SiqSpec)> {
    Ok((SiqSpec::cyclic(49, 43, &[1, 3, 4])?, SiqSpec::cyclic(49, 43, &[2, 5, 6])?))
}

/// Reductive, not 2-reductive medial quandles of order `n` (all, SI or not).
pub fn reductive_not_two_reductive(n: usize) -> Vec<Quandle> {
    let filter = MeshFilter {
        reductive_only: true,
        nonzero_phi: true,
        ..MeshFilter::default()
    };
    enumerate_medial(n, &filter, |q| q.reductivity_degree().is_some_and(|d| d > 2))
}

/// One machine-checked claim of a report.
#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub version: String,
    pub config_hash: String,
    pub seed: u64,
    pub claims: Vec<Claim>,
}

impl ClaimReport {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn to_text(&self) -> String {
        let width = self.claims.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut s = format!("qforge {}  config {}  seed {}\n", self.version, self.config_hash, self.seed);
        for c in &self.claims {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            s.push_str(&format!("{verdict}  {:width$}  {}\n", c.name, c.detail));
        }
        s
    }
}

fn claim(name: &str, pass: bool, detail: String) -> Claim {
    Claim {
        name: name.to_string(),
        pass,
        detail,
    }
}

/// Regenerates the desk-scale claims; writes `report.json` and `report.txt`
/// into `outdir` when given.
pub fn report_tables(outdir: Option<&Path>, cfg: &RunConfig) -> Result<ClaimReport> {
    let claims = cfg.install(|| desk_claims(cfg))?;
    let report = ClaimReport {
        version: VERSION.to_string(),
        config_hash: cfg.hash(),
        seed: cfg.seed,
        claims,
    };
    if let Some(dir) = outdir {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.json"), serde_json::to_string_pretty(&report)? + "\n")?;
        std::fs::write(dir.join("report.txt"), report.to_text())?;
    }
    Ok(report)
}

fn desk_claims(cfg: &RunConfig) -> Result<Vec<Claim>> {
    let mut claims = Vec::new();

    let two = enumerate_si(2, &SiOptions::default(), cfg)?;
    claims.push(claim(
        "unique two-element SI medial quandle",
        two.representatives.len() == 1 && two.representatives[0].quandle.is_projection(),
        format!("{} representative(s)", two.representatives.len()),
    ));

    for ((a, b), (size, total)) in small_pairs()?.iter().zip([(6, 2), (8, 9)]) {
        let (qa, qb) = (a.quandle()?, b.quandle()?);
        let pair_ok = [&qa, &qb]
            .iter()
            .all(|q| q.reductivity_degree() == Some(3) && monolith(q).is_some())
            && quandle_isomorphic(&qa, &qb).is_none();
        let found = reductive_not_two_reductive(size);
        let si: Vec<&Quandle> = found.iter().filter(|q| monolith(q).is_some()).collect();
        let si_match = si.len() == 2
            && [&qa, &qb]
                .iter()
                .all(|p| si.iter().any(|q| quandle_isomorphic(p, q).is_some()));
        claims.push(claim(
            &format!("order {size}: reductive, not 2-reductive"),
            pair_ok && found.len() == total && si_match,
            format!("{} found, {} SI; expected {total} with the pair SI", found.len(), si.len()),
        ));
    }

    let (za, zb) = z49_pair()?;
    let (qa, qb) = (za.quandle()?, zb.quandle()?);
    let criterion = cyclic_iso_criterion(&za.mesh()?, &zb.mesh()?)?;
    let iso = quandle_isomorphic(&qa, &qb).is_some();
    let pa = lattice_profile(&all_congruences(&qa, cfg.caps.lattice)?);
    let pb = lattice_profile(&all_congruences(&qb, cfg.caps.lattice)?);
    claims.push(claim(
        "Z_49 pair: non-isomorphic, equal lattice profile",
        !criterion && !iso && pa == pb && qa.size() == 70 && qb.size() == 70,
        format!("criterion {criterion}, table isomorphism {iso}, {} congruences each", pa.len()),
    ));

    let mut ok = true;
    let mut detail = Vec::new();
    for n in 3..=12 {
        let found = two_reductive_si(n);
        let family = two_reductive_family(n);
        let same = same_iso_classes(&found, &family);
        ok &= same;
        detail.push(format!("{n}:{}", found.len()));
    }
    claims.push(claim(
        "2-reductive SI list (orders <= 12) = siq(Z_p^k, 1, C)",
        ok,
        detail.join(" "),
    ));

    let opts = SiOptions { involutory_only: true };
    let mut ok = true;
    let mut detail = Vec::new();
    for n in 2..=16 {
        let rep = enumerate_si(n, &opts, cfg)?;
        let found: Vec<Quandle> = rep.representatives.into_iter().map(|r| r.quandle).collect();
        let family = involutory_family(n);
        ok &= !rep.truncated && same_iso_classes(&found, &family);
        if !found.is_empty() {
            detail.push(format!("{n}:{}", found.len()));
        }
    }
    claims.push(claim("involutory SI list (orders <= 16) = four families", ok, detail.join(" ")));
    Ok(claims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::alexander_cyclic;

fn sizes(qs: &[Quandle]) -> Vec<usize> {
    qs.iter().map(Quandle::size).collect()
}

    #[test]
    fn classify_examples() {
        let c = classify(&alexander_cyclic(9, 2).unwrap()).unwrap();
        assert_eq!(c.class, SiClass::Latin);
        assert_eq!(c.monolith.unwrap().blocks()[0], vec![0, 3, 6]);

        let q = SiqSpec::cyclic(4, 3, &[0, 1]).unwrap().quandle().unwrap();
        let c = classify(&q).unwrap();
        assert_eq!(c.class, SiClass::Reductive);
        assert_eq!(c.orbit_count, 3);
        assert!(c.orbit_count <= c.main_orbit_kappa + 1);

        // (Z_6, -1): rows agree only for a - b = 3, which crosses orbits
        let c = classify(&alexander_cyclic(6, -1).unwrap()).unwrap();
        assert_eq!(c.class, SiClass::NotSi);
        assert!(!c.quasi_reductive);
        assert_eq!(c.reductivity, None);

        assert_eq!(classify(&projection_quandle(2)).unwrap().class, SiClass::TwoElementProjection);
        assert_eq!(classify(&projection_quandle(3)).unwrap().class, SiClass::NotSi);
    }

    #[test]
    fn classify_rejects_non_medial() {
        // conjugation quandle of the transpositions of S_4
        let q = Quandle::from_table(&[
            vec![0, 3, 4, 1, 2, 5],
            vec![3, 1, 5, 0, 4, 2],
            vec![4, 5, 2, 3, 0, 1],
            vec![1, 0, 2, 3, 5, 4],
            vec![2, 1, 0, 5, 4, 3],
            vec![0, 2, 1, 4, 3, 5],
        ])
        .unwrap();
        assert!(matches!(classify(&q), Err(Error::NonMedial(_))));
    }

    #[test]
    fn order_two_has_one_representative() {
        let rep = enumerate_si(2, &SiOptions::default(), &RunConfig::default()).unwrap();
        assert_eq!(rep.representatives.len(), 1);
        assert_eq!(rep.counts.two_element_projection, 1);
        assert!(!rep.truncated);
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3).len(), 0);
        assert_eq!(combinations(3, 2)[0], vec![0, 1]);
    }

    #[test]
    fn families_have_the_right_orders() {
        assert_eq!(sizes(&involutory_family(3)), vec![3, 3]);
        assert_eq!(involutory_family(6).len(), 1);
        assert_eq!(involutory_family(5).len(), 1);
        assert!(involutory_family(10).is_empty());
        assert!(two_reductive_family(4).iter().all(|q| q.reductivity_degree() == Some(2)));
    }
}
