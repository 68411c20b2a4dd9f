//! Acceptance gate: one line per criterion, nonzero exit on any failure.
//! Expected values come from oracles written here (group arithmetic,
//! brute-force quotients, characters, orbit counts), not from the solvers
//! under test.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use rand::SeedableRng;

use hinfty::formats::{read_json, AlgebraJson};
use hinfty::hinfty::{
    braiding, check_tensor_unit_iso, hom_space, naive_box_swap, tensor_power_hom_dim, GradedModule, GradedMorphism,
    ProductKind,
};
use hinfty::hopf::Direction;
use hinfty::htensor::{Induced, TensorModule};
use hinfty::interconnect::*;
use hinfty::linalg::{quotient_space, Span};
use hinfty::operad::*;
use hinfty::pseudo::{hinfty_to_pseudo, poly_op_space, pseudo_to_hinfty, Pseudoproduct};
use hinfty::suite::{run_suite, Status, Suite, SuiteConfig};
use hinfty::{Field, HopfAlgebra, LinearMap, Perm, Scalar, SetMap, Tensor, Vector};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

const Q: Field = Field::Rational;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

/// A finite group modelled by plain arithmetic, indexed like the library
/// basis (cyclic: `k`; symmetric: lexicographic rank of the image list).
#[derive(Clone)]
enum Model {
    Cyclic(usize),
    Sym3(Vec<[usize; 3]>),
}

impl Model {
    fn sym3() -> Model {
        let mut perms = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    if a != b && b != c && a != c {
                        perms.push([a, b, c]);
                    }
                }
            }
        }
        Model::Sym3(perms)
    }

    fn order(&self) -> usize {
        match self {
            Model::Cyclic(n) => *n,
            Model::Sym3(p) => p.len(),
        }
    }

    /// `a·b`, with permutations composed as functions (`b` first).
    fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            Model::Cyclic(n) => (a + b) % n,
            Model::Sym3(p) => {
                let c = [p[a][p[b][0]], p[a][p[b][1]], p[a][p[b][2]]];
                p.iter().position(|x| *x == c).unwrap()
            }
        }
    }

    fn inv(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul(a, b) == 0).unwrap()
    }

    fn algebra(&self) -> HopfAlgebra {
        match self {
            Model::Cyclic(n) => HopfAlgebra::cyclic(Q, *n).unwrap(),
            Model::Sym3(_) => HopfAlgebra::symmetric(Q, 3).unwrap(),
        }
    }
}

fn models() -> Vec<Model> {
    vec![Model::Cyclic(2), Model::Cyclic(4), Model::sym3()]
}

fn z2() -> Arc<HopfAlgebra> {
    Arc::new(HopfAlgebra::cyclic(Q, 2).unwrap())
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `dim Hom_{G^n}(A, B)` for group-algebra modules over `H^⊗n`, from
/// characters: `|G|⁻ⁿ Σ_w χ_A(w) χ_B(w⁻¹)`.
fn hom_dim_by_characters(model: &Model, a: &TensorModule, b: &TensorModule) -> usize {
    let n = a.arity();
    let g = model.order();
    let trace = |m: &TensorModule, w: &[usize]| -> Scalar {
        (0..m.dim()).fold(Scalar::zero(), |acc, i| &acc + &m.act_word(w, &Vector::basis(i)).get(&i))
    };
    let mut sum = Scalar::zero();
    for idx in 0..g.pow(n as u32) {
        let mut w = vec![0; n];
        let mut r = idx;
        for slot in w.iter_mut().rev() {
            *slot = r % g;
            r /= g;
        }
        let winv: Vec<usize> = w.iter().map(|&x| model.inv(x)).collect();
        sum = &sum + &(&trace(a, &w) * &trace(b, &winv));
    }
    let dim = sum.checked_div(&Scalar::from(g.pow(n as u32) as i64)).unwrap();
    dim.to_string().parse().expect("integral dimension")
}

fn z2_sign() -> TensorModule {
    TensorModule::from_fn(z2(), 1, 1, |_, h, _| Vector::term(0, Scalar::from(if h == 0 { 1 } else { -1 }))).unwrap()
}

fn c01_hopf_axioms() -> Outcome {
    for m in models() {
        let h = m.algebra();
        let rep = ok(h.check_axioms())?;
        ensure!(rep.all_pass(), "{}: {:?}", h.name(), rep.checks);
        for a in 0..m.order() {
            for b in 0..m.order() {
                ensure!(h.mul_basis(a, b) == Vector::basis(m.mul(a, b)), "{}: product {a}·{b}", h.name());
            }
            ensure!(h.coproduct(&Vector::basis(a)) == Tensor::basis(vec![a, a]), "{}: Δ({a})", h.name());
            ensure!(h.counit_basis(a) == Scalar::one(), "{}: ε({a})", h.name());
            ensure!(h.antipode_basis(a) == Vector::basis(m.inv(a)), "{}: S({a})", h.name());
        }
    }
    let d = HopfAlgebra::primitive_poly(Q, 1, Some(6)).unwrap();
    ensure!(ok(d.check_axioms())?.all_pass(), "k[∂] axioms");
    for n in 0..=6 {
        let x = Vector::basis(ok(d.monomial(&[n]))?);
        let mut want = Tensor::new();
        for k in 0..=n {
            want.add_term(vec![ok(d.monomial(&[k]))?, ok(d.monomial(&[n - k]))?], Scalar::from(binomial(n, k)));
        }
        ensure!(d.coproduct(&x) == want, "Δ(∂^{n})");
        ensure!(d.antipode(&x) == x.scale(&Scalar::from(if n % 2 == 0 { 1 } else { -1 })), "S(∂^{n})");
        ensure!(d.counit(&x) == Scalar::from(i64::from(n == 0)), "ε(∂^{n})");
    }
    let bad = ok(ok(read_json::<AlgebraJson>(&fixture("z2_bad_antipode.json")))?.build())?;
    let rep = ok(bad.check_axioms())?;
    ensure!(rep.failure("antipode") == Some("g"), "corrupted antipode: {:?}", rep.checks);
    let cfg = ok(SuiteConfig::new(Arc::new(bad), Vec::new(), 1, 1, 0, vec![Suite::Hopf]))?;
    let report = run_suite(&cfg);
    let rec = report.check("hopf-axioms").ok_or("no hopf-axioms record")?;
    ensure!(rec.status == Status::Fail && rec.counterexample.as_deref() == Some("antipode fails at g"), "{rec:?}");
    Ok("Z/2, Z/4, S_3 and k[∂] to degree 6 pass; corrupted antipode fails at g".into())
}

fn c02_fourier() -> Outcome {
    let mut sizes = Vec::new();
    for m in models() {
        let h = m.algebra();
        let g = m.order();
        for f in 0..g {
            for b in 0..g {
                let x = Tensor::basis(vec![f, b]);
                let fwd = ok(h.fourier(&x, Direction::Forward))?;
                let inv = ok(h.fourier(&x, Direction::Inverse))?;
                // f⊗g ↦ f g⁻¹ ⊗ g and f⊗g ↦ f g ⊗ g
                ensure!(fwd == Tensor::basis(vec![m.mul(f, m.inv(b)), b]), "{} forward {f} {b}", h.name());
                ensure!(inv == Tensor::basis(vec![m.mul(f, b), b]), "{} inverse {f} {b}", h.name());
                ensure!(ok(h.fourier(&fwd, Direction::Inverse))? == x, "{} F⁻¹F at {f} {b}", h.name());
                ensure!(ok(h.fourier(&inv, Direction::Forward))? == x, "{} FF⁻¹ at {f} {b}", h.name());
            }
        }
        sizes.push(g * g);
    }
    ensure!(sizes == vec![4, 16, 36], "basis sizes {sizes:?}");
    Ok("exact on bases of size 4, 16, 36".into())
}

fn c03_normal_form() -> Outcome {
    let v = Arc::new(TensorModule::regular(z2()).unwrap());
    for n in [2usize, 3] {
        let ind = ok(Induced::new(v.clone(), SetMap::collapse(n)))?;
        let words = 1usize << n;
        let amb = |w: usize, x: usize| w * 2 + x;
        // (w·Δ(h)) ⊗ x − w ⊗ h x with Δ(h) = h⊗…⊗h over Z/2
        let mut rels = Vec::new();
        for w in 0..words {
            for h in 0..2 {
                for x in 0..2 {
                    let moved = if h == 1 { w ^ (words - 1) } else { w };
                    let mut r = Vector::new();
                    r.add_term(amb(moved, x), Scalar::one());
                    r.add_term(amb(w, (x + h) % 2), -Scalar::one());
                    if !r.is_zero() {
                        rels.push(r);
                    }
                }
            }
        }
        let q = ok(quotient_space(Q, words * 2, &rels))?;
        ensure!(q.dim() == ind.dim() && q.dim() == words, "degree {n}: dimensions {} {}", q.dim(), ind.dim());
        let digits = |w: usize| (0..n).map(|i| (w >> (n - 1 - i)) & 1).collect::<Vec<_>>();
        let index = |d: &[usize]| d.iter().fold(0, |a, &b| a * 2 + b);
        let phi = LinearMap::from_fn(q.dim(), ind.dim(), |i| {
            let (w, x) = ind.element(i);
            q.project(&x.map_keys(|b| amb(index(&w), *b)))
        });
        ensure!(phi.inverse(Q).is_ok(), "degree {n}: normal forms dependent in the quotient");
        for e in 0..words * 2 {
            let (w, x) = (digits(e / 2), e % 2);
            let nf = ind.normalize(&w, &Vector::basis(x));
            ensure!(phi.apply(&nf) == q.project(&Vector::basis(e)), "degree {n}: ambient {e}");
            // by hand: move the last letter across, (w₁+wₙ, …, 0) ⊗ (wₙ + x)
            let last = w[n - 1];
            let mut hw: Vec<usize> = w.iter().map(|&a| (a + last) % 2).collect();
            hw[n - 1] = 0;
            let target = (0..ind.dim()).find(|&i| ind.element(i) == (hw.clone(), Vector::basis((x + last) % 2)));
            ensure!(target.map(Vector::basis) == Some(nf.clone()), "degree {n}: hand normal form at {e}");
        }
        for i in 0..ind.dim() {
            let (w, x) = ind.element(i);
            ensure!(ind.normalize(&w, &x) == Vector::basis(i), "degree {n}: not idempotent at {i}");
        }
    }
    Ok("degrees 2 and 3 agree with the brute-force quotient on every ambient vector".into())
}

fn c04_hinfty_lemmas() -> Outcome {
    let h = z2();
    let model = Model::Cyclic(2);
    let reg = TensorModule::regular(h.clone()).unwrap();
    let triv = TensorModule::trivial(h.clone()).unwrap();
    let gr: Vec<GradedModule> =
        [reg.clone(), triv.clone(), z2_sign()].into_iter().map(|m| GradedModule::regular(m, 3).unwrap()).collect();
    let mut total = 0;
    for v in &gr {
        for w in &gr {
            let homs = ok(hom_space(v, w))?;
            let want: usize = (0..=3).map(|n| hom_dim_by_characters(&model, v.module(n), w.module(n))).sum();
            ensure!(homs.len() == want, "hom dimension {} vs characters {want}", homs.len());
            for f in &homs {
                for n in 0..=3 {
                    ensure!(f.maps[n].rows() == w.dim(n) && f.maps[n].cols() == v.dim(n), "degree {n} shape");
                    ensure!(v.module(n).is_equivariant(&f.maps[n], w.module(n)), "degree {n} not equivariant");
                }
            }
            total += homs.len();
        }
    }
    let iso = ok(check_tensor_unit_iso(&gr[0]))?;
    ensure!(iso.len() == 5 && iso.iter().all(|&b| b), "unit identification {iso:?}");

    // V⁰ = k², V¹ = H, V² = H⊗H: Hom_k((V⁰)^⊗n, V⁰) has dimension 2ⁿ⁺¹
    let pieces = vec![
        TensorModule::vector_space(h.clone(), 2).unwrap(),
        reg.clone(),
        TensorModule::outer(&[&reg, &reg]).unwrap(),
        TensorModule::zero(h.clone(), 3).unwrap(),
    ];
    let wide = ok(GradedModule::direct(h.clone(), 3, pieces))?;
    for (v, d0) in [(&gr[0], 1usize), (&wide, 2)] {
        for n in 2..=3u32 {
            let got = ok(tensor_power_hom_dim(v, n as usize))?;
            ensure!(got == d0.pow(n + 1), "collapse n = {n}: {got} vs {}", d0.pow(n + 1));
        }
    }
    Ok(format!("{total} solver maps degreewise; unit round trips to degree 3; collapse dims 1 and 2ⁿ⁺¹"))
}

fn c05_star_structure() -> Outcome {
    let h = z2();
    let v = Arc::new(GradedModule::regular(TensorModule::regular(h.clone()).unwrap(), 3).unwrap());
    let s = ok(GradedModule::star(&v, &v))?;
    for n in 0..=3usize {
        let keys: BTreeSet<Vec<usize>> =
            s.piece(n).blocks.iter().map(|b| b.key().unwrap().images().to_vec()).collect();
        let all: BTreeSet<Vec<usize>> =
            (0..1usize << n).map(|c| (0..n).map(|i| (c >> (n - 1 - i)) & 1).collect()).collect();
        ensure!(keys == all, "degree {n}: summand keys differ from all maps [n]→[2]");
        for b in &s.piece(n).blocks {
            let ones = b.key().unwrap().images().iter().filter(|&&i| i == 1).count();
            ensure!(b.dim == v.dim(n - ones) * v.dim(ones), "degree {n}: summand dimension");
        }
    }
    ensure!(s.piece(2).blocks.len() == 4 && s.piece(3).blocks.len() == 8, "summand counts");
    let tau = Perm(vec![1, 0]);
    let (t, b) = ok(braiding(&tau, &s))?;
    ensure!(b.equivariance_witness(&s, &t).is_none(), "braiding not equivariant");
    let (_, back) = ok(braiding(&tau, &t))?;
    ensure!(ok(back.compose(&b))? == GradedMorphism::identity(&s), "braiding not involutive");
    let one = Arc::new(ok(GradedModule::concentrated(h.clone(), 2, TensorModule::regular(h.clone()).unwrap()))?);
    let vw = ok(GradedModule::boxtimes(&one, &one))?;
    let swap = ok(naive_box_swap(&vw, &vw))?;
    let w = swap.equivariance_witness(&vw, &vw);
    ensure!(matches!(w, Some((2, ..))), "plain swap should fail in degree 2, got {w:?}");
    Ok(format!("4 and 8 summands; braiding equivariant and involutive; swap fails at {:?}", w.unwrap()))
}

fn c06_star_vs_box() -> Outcome {
    let h = z2();
    let reg = TensorModule::regular(h.clone()).unwrap();
    let v = Arc::new(GradedModule::regular(reg.clone(), 3).unwrap());
    let star = ok(GradedModule::star(&v, &v))?;
    let target = ok(GradedModule::induced_family(TensorModule::outer(&[&reg, &reg]).unwrap(), 3))?;
    let phi = ok(star_to_box_regular(&star, &target))?;
    for n in 0..=3usize {
        // every g: [n]→[2] contributes H^⊗n ⊗_{H^⊗|im g|} (H⊗H collapsed off im g), of dimension 2ⁿ
        let want = (1usize << n) * (1usize << n);
        ensure!(star.piece(n).blocks.len() == 1 << n, "degree {n} summands");
        ensure!(star.dim(n) == want && target.dim(n) == want, "degree {n}: {} {} vs {want}", star.dim(n), target.dim(n));
        ensure!(phi.maps[n].inverse(Q).is_ok(), "degree {n} not bijective");
        ensure!(star.module(n).is_equivariant(&phi.maps[n], target.module(n)), "degree {n} not equivariant");
    }
    Ok("bijective and equivariant in degrees 0..3 with dimensions 1, 4, 16, 64".into())
}

fn is_gap(first: &SetMap, second: &SetMap) -> bool {
    let k = first.source();
    let inj = (0..k).map(|x| first.apply(x)).collect::<BTreeSet<_>>().len() == k;
    let surj = (0..second.source()).map(|x| second.apply(x)).collect::<BTreeSet<_>>().len() == second.target();
    let comp: BTreeSet<usize> = (0..k).map(|x| second.apply(first.apply(x))).collect();
    let bij_comp = comp.len() == k && second.target() == k;
    let both_bij = first.target() == k && second.source() == second.target();
    inj && surj && bij_comp && !(inj && first.target() == k && both_bij)
}

fn c07_rules() -> Outcome {
    let iv = ok(embed_i(TensorModule::regular(z2()).unwrap(), 3))?;
    let checks = ok(iv.check_compatibility())?;
    ensure!(!checks.is_empty() && checks.iter().all(|c| c.status == PairStatus::Pass), "id rule");
    let d = ok(IcModule::delta(iv.module().clone()))?;
    let mut flagged = 0;
    let dchecks = ok(d.check_compatibility())?;
    for c in &dchecks {
        let gap = is_gap(&c.first, &c.second);
        match (&c.status, gap) {
            (PairStatus::Flagged { .. }, true) => flagged += 1,
            (PairStatus::Pass, false) => {}
            (s, _) => return Err(format!("δ at {} then {}: {s:?}, gap {gap}", c.first, c.second)),
        }
    }
    ensure!(flagged > 0, "δ produced no flag");
    Ok(format!("id: {} pairs pass; δ: {flagged} of {} pairs flagged, rest pass", checks.len(), dchecks.len()))
}

fn c08_full_vs_reduced() -> Outcome {
    let h = z2();
    let iv = ok(embed_i(TensorModule::regular(h.clone()).unwrap(), 3))?;
    let it = ok(embed_i(TensorModule::trivial(h.clone()).unwrap(), 3))?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let (mut total, mut yes) = (0, 0);
    for (src, tgt) in [(&iv, &iv), (&iv, &it)] {
        let basis = ok(hom_ic(src, tgt))?;
        for f in ok(random_graded_maps(src, tgt, &basis, 60, &mut rng))? {
            let full = ok(check_ic_morphism(&f, src, tgt, CheckMode::Full))?.ok;
            let reduced = ok(check_ic_morphism(&f, src, tgt, CheckMode::Reduced { degree: 1 }))?.ok;
            ensure!(full == reduced, "verdicts differ on map {total}");
            total += 1;
            yes += full as usize;
        }
    }
    ensure!(total >= 100 && yes > 0 && yes < total, "{total} maps, {yes} accepted");
    Ok(format!("{total} seeded maps, {yes} accepted, verdicts agree"))
}

fn c09_pseudoproducts() -> Outcome {
    let h = z2();
    let v = Arc::new(TensorModule::regular(h.clone()).unwrap());
    let iv = Arc::new(ok(embed_i(TensorModule::clone(&v), 3))?);
    let x = ok(IcModule::tensor(ProductKind::Star, &[iv.clone(), iv.clone()]))?;
    let homs = ok(hom_ic(&x, &iv))?;
    let ops = ok(poly_op_space(&[v.clone(), v.clone()], v.clone()))?;
    let vv = TensorModule::outer(&[&v, &v]).unwrap();
    let target = ok(Induced::new(v.clone(), SetMap::collapse(2)))?;
    let oracle = hom_dim_by_characters(&Model::Cyclic(2), &vv, target.module());
    ensure!(oracle == 4 && homs.len() == 4 && ops.len() == 4, "dims {} {} {oracle}", homs.len(), ops.len());
    for mu in &homs {
        let (p, member) = ok(hinfty_to_pseudo(mu, x.module(), iv.module(), v.clone()))?;
        ensure!(member, "IC map not induced by a pseudoproduct");
        ensure!(&ok(pseudo_to_hinfty(&p, x.module(), iv.module()))? == mu, "round trip from H^∞ side");
    }
    for op in &ops {
        let p = ok(Pseudoproduct::from_op(op.clone()))?;
        let mu = ok(pseudo_to_hinfty(&p, x.module(), iv.module()))?;
        ensure!(ok(hinfty_to_pseudo(&mu, x.module(), iv.module(), v.clone()))?.0 == p, "round trip from pseudo side");
    }
    let block = x.module().product_block(2, &SetMap::new(2, vec![0, 0]).unwrap()).unwrap().clone();
    let mut bad = homs.iter().find(|m| block.range().any(|c| !m.maps[2].column(c).is_zero())).ok_or("no (2,0) part")?.clone();
    let c = block.range().find(|&c| !bad.maps[2].column(c).is_zero()).unwrap();
    let col = bad.maps[2].column(c).scale(&Scalar::from(2));
    bad.maps[2].set_column(c, col);
    ensure!(!ok(hinfty_to_pseudo(&bad, x.module(), iv.module(), v.clone()))?.1, "perturbed map accepted");
    Ok("dimension 4 on both sides (character oracle 4); round trips exact; perturbation rejected".into())
}

fn c10_adjunction() -> Outcome {
    let h = z2();
    let model = Model::Cyclic(2);
    let mods = [TensorModule::regular(h.clone()).unwrap(), TensorModule::trivial(h.clone()).unwrap(), z2_sign()];
    let mut dims = Vec::new();
    for v in &mods {
        let iv = ok(embed_i(v.clone(), 2))?;
        ensure!(&ok(iv.project())? == v, "p(i(V)) ≠ V");
        for w in &mods {
            let iw = ok(embed_i(w.clone(), 2))?;
            let h_maps = ok(v.hom_space(w))?;
            let ic_maps = ok(hom_ic(&iv, &iw))?;
            let oracle = hom_dim_by_characters(&model, v, w);
            ensure!(h_maps.len() == oracle && ic_maps.len() == oracle, "dims {} {} {oracle}", h_maps.len(), ic_maps.len());
            for g in &h_maps {
                let f = ok(transpose_to_ic(g, &iv, &iw))?;
                ensure!(ok(check_ic_morphism(&f, &iv, &iw, CheckMode::Full))?.ok, "transpose is not IC");
                ensure!(&transpose_to_h(&f) == g, "H-map round trip");
            }
            for f in &ic_maps {
                ensure!(&ok(transpose_to_ic(&transpose_to_h(f), &iv, &iw))? == f, "IC-map round trip");
            }
            dims.push(oracle);
        }
    }
    Ok(format!("hom dimensions {dims:?} on both sides; round trips exact"))
}

/// Orbits of `S_n` on the basis `(c: [m]→[n], digits)` of `(V^{⊗*n})^m`.
fn orbit_count(vdims: &[usize], n: usize, m: usize) -> usize {
    let mut elems = Vec::new();
    for c in SetMap::all(m, n) {
        let ranges: Vec<usize> = c.fiber_sizes().iter().map(|&s| vdims[s]).collect();
        if ranges.contains(&0) {
            continue;
        }
        let count: usize = ranges.iter().product();
        for mut idx in 0..count {
            let mut digits = vec![0; n];
            for i in (0..n).rev() {
                digits[i] = idx % ranges[i];
                idx /= ranges[i];
            }
            elems.push((c.images().to_vec(), digits));
        }
    }
    let mut seen = BTreeSet::new();
    let mut orbits = 0;
    for e in &elems {
        if seen.contains(e) {
            continue;
        }
        orbits += 1;
        for s in Perm::all(n) {
            let c: Vec<usize> = e.0.iter().map(|&x| s.apply(x)).collect();
            let mut d = vec![0; n];
            for j in 0..n {
                d[s.apply(j)] = e.1[j];
            }
            seen.insert((c, d));
        }
    }
    orbits
}

fn c11_operads() -> Outcome {
    for op in [Operad::com(Q, 4), Operad::ass(Q, 4)] {
        for c in ok(op.check_axioms())? {
            ensure!(c.passed(), "{}: {} {:?}", op.name(), c.name, c.witness);
        }
    }
    let fact = [1, 1, 2, 6, 24];
    for n in 1..=4 {
        ensure!(Operad::com(Q, 4).dim(n) == 1 && Operad::ass(Q, 4).dim(n) == fact[n], "dims at {n}");
    }
    let v = Arc::new(ok(embed_i(TensorModule::regular(z2()).unwrap(), 2))?);
    let end = ok(end_operad(v.clone(), 3))?;
    ensure!(end.operad.dim(2) == 4, "End(2) = {}", end.operad.dim(2));
    for c in ok(end.operad.check_axioms())? {
        ensure!(c.passed(), "End: {} {:?}", c.name, c.witness);
    }
    // Schur functors: sums add, tensors convolve, composites compose
    let com = Operad::com(Q, 4).smodule().clone();
    let ass = SModule::regular(Q, 4);
    for (m, n) in [(&com, &ass), (&ass, &com), (&com, &com)] {
        let (sm, sn) = (ok(schur_vect_dims(m, 2))?, ok(schur_vect_dims(n, 2))?);
        ensure!(ok(schur_vect_dims(&m.sum(n), 2))? == sm.iter().zip(&sn).map(|(a, b)| a + b).collect::<Vec<_>>(), "sum");
        let conv: Vec<usize> = (0..=4).map(|w| (0..=w).map(|i| sm[i] * sn[w - i]).sum()).collect();
        ensure!(ok(schur_vect_dims(&m.tensor(n), 2))? == conv, "tensor");
        let weights: Vec<usize> = (1..=4).flat_map(|w| std::iter::repeat_n(w, sn[w])).collect();
        let composite = ok(m.compose(n))?.smodule;
        ensure!(ok(schur_vect_dims(&composite, 2))? == ok(schur_weighted_dims(m, &weights, 4))?, "composition");
    }
    // free Com-algebra: orbit oracle, then the universal property
    let com_op = Arc::new(Operad::com(Q, 3));
    let fa = ok(free_algebra(com_op.clone(), v.clone()))?;
    let vdims = v.module().dims();
    for m in 0..=2 {
        for n in 1..=3 {
            ensure!(fa.schur.dims_by_arity()[n][m] == orbit_count(&vdims, n, m), "Com(V) arity {n} degree {m}");
        }
    }
    let target = ok(PAlgebra::trivial_extension(com_op, Arc::new(ok(StarPowers::new(v.clone(), 3))?)))?;
    let homs = ok(hom_ic(&v, &v))?;
    let mut flat = Vec::new();
    for f in &homs {
        let ext = ok(fa.extend(&target, f))?;
        ensure!(ext.freedom == 0, "solution space dimension {}", ext.freedom);
        ensure!(&ok(ext.map.compose(&fa.eta))? == f, "extension does not restrict to f");
        ensure!(ok(fa.algebra.morphism_witness(&target, &ext.map))?.is_none(), "extension is not an algebra map");
        flat.push(ext.map.flatten());
    }
    ensure!(Span::new(Q, flat).rank() == homs.len(), "extensions dependent");
    Ok(format!("Com, Ass, End pass to arity 4/4/3; End(2) = 4; Schur dims agree; {} unique extensions", homs.len()))
}

fn c12_determinism() -> Outcome {
    let cfg = ok(SuiteConfig::new(z2(), Vec::new(), 3, 4, 11, Suite::ALL.to_vec()))?;
    let a = run_suite(&cfg).to_json();
    let b = run_suite(&cfg).to_json();
    ensure!(a == b, "reports differ");
    let report = hinfty::suite::Report::from_json(&a).map_err(|e| e.to_string())?;
    for c in &report.checks {
        let want = if c.id == "delta-rule-compatible" { Status::Flagged } else { Status::Pass };
        ensure!(c.status == want, "{}: {:?} {:?}", c.id, c.status, c.counterexample);
    }
    Ok(format!("{} bytes identical over two runs; all pass, δ flagged", a.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("hopf axioms and corrupted antipode", c01_hopf_axioms),
        ("fourier invertibility", c02_fourier),
        ("normal form vs brute-force quotient", c03_normal_form),
        ("graded hom spaces, unit and collapse", c04_hinfty_lemmas),
        ("star product structure and braiding", c05_star_structure),
        ("star of regulars vs box of modules", c06_star_vs_box),
        ("interconnection rule compatibility", c07_rules),
        ("full vs reduced morphism verdicts", c08_full_vs_reduced),
        ("multiplications vs pseudoproducts", c09_pseudoproducts),
        ("adjunction and faithfulness", c10_adjunction),
        ("operads, schur functors, free algebras", c11_operads),
        ("deterministic reports", c12_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match r {
            Ok(d) => println!("PASS {:>2} {name}: {d}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
