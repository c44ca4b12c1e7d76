mod common;

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use common::{
    ep_points, random_clopen, random_matrix, random_nonempty_clopen, random_subset, random_table,
    rng, ApplyOracle,
};
use fullgroup::construct::{clopen_transport, witness_search, SearchBounds};
use fullgroup::invariant::{
    automorphic, bowen_franks, clopen_class, smith_normal_form, BfGroup, Decision, GroupElement,
};
use fullgroup::shift::Relation;
use fullgroup::{ClopenSet, EpPoint, TableMap, TransitionMatrix, Word};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Membership of `w` in the union of the cylinders of `words`.
fn covered(words: &BTreeSet<Word>, w: &Word) -> bool {
    words.iter().any(|c| c.is_prefix_of(w))
}

/// Number of admissible words of length `k` from powers of the matrix.
fn transfer_count(m: &TransitionMatrix, k: usize) -> u128 {
    if k == 0 {
        return 1;
    }
    let n = m.n();
    let mut v = vec![1u128; n];
    for _ in 1..k {
        v = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| m.get(i as u8 + 1, j as u8 + 1))
                    .map(|j| v[j])
                    .sum()
            })
            .collect();
    }
    v.iter().sum()
}

#[test]
fn golden_mean_word_counts_are_fibonacci() {
    let m = TransitionMatrix::golden_mean();
    let mut fib = vec![0u128, 1];
    for i in 2..20 {
        fib.push(fib[i - 1] + fib[i - 2]);
    }
    for k in 0..=14 {
        assert_eq!(m.admissible_words(k).len() as u128, fib[k + 2], "k = {k}");
    }
}

#[test]
fn witness_search_is_deterministic() {
    for seed in 0..6 {
        let m = random_matrix(&mut rng(seed), 3);
        let bounds = SearchBounds::new(1, 2);
        let pred = |t: &TableMap| t.is_involution() && !t.is_identity();
        let first = witness_search(&m, bounds, &pred);
        assert_eq!(first, witness_search(&m, bounds, &pred));
    }
}

/// All elements of `⊕ ℤ/dᵢ`.
fn elements(d: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &di in d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..di).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Orbits of `⊕ ℤ/dᵢ` under all automorphisms, by enumerating every
/// homomorphism (images of the generators `eᵢ` with `dᵢ·yᵢ = 0`) and
/// keeping the bijective ones. Returns an orbit label per element.
fn brute_force_orbits(d: &[u32]) -> HashMap<Vec<u32>, usize> {
    let elems = elements(d);
    let killed_by = |k: u32| -> Vec<Vec<u32>> {
        elems
            .iter()
            .filter(|y| {
                y.iter()
                    .zip(d)
                    .all(|(&c, &dj)| (c as u64 * k as u64).is_multiple_of(dj as u64))
            })
            .cloned()
            .collect()
    };
    let options: Vec<Vec<Vec<u32>>> = d.iter().map(|&di| killed_by(di)).collect();
    let image = |gens: &[&Vec<u32>], x: &[u32]| -> Vec<u32> {
        (0..d.len())
            .map(|j| {
                let s: u64 = gens
                    .iter()
                    .zip(x)
                    .map(|(g, &c)| g[j] as u64 * c as u64)
                    .sum();
                (s % d[j] as u64) as u32
            })
            .collect()
    };
    // union-find over element indices
    let index: HashMap<&Vec<u32>, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut parent: Vec<usize> = (0..elems.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let mut choice = vec![0usize; d.len()];
    'outer: loop {
        let gens: Vec<&Vec<u32>> = choice.iter().zip(&options).map(|(&c, o)| &o[c]).collect();
        let imgs: Vec<Vec<u32>> = elems.iter().map(|x| image(&gens, x)).collect();
        let distinct: BTreeSet<&Vec<u32>> = imgs.iter().collect();
        if distinct.len() == elems.len() {
            for (i, y) in imgs.iter().enumerate() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, index[y]));
                parent[a] = b;
            }
        }
        for k in 0..choice.len() {
            choice[k] += 1;
            if choice[k] < options[k].len() {
                continue 'outer;
            }
            choice[k] = 0;
        }
        break;
    }
    (0..elems.len())
        .map(|i| (elems[i].clone(), find(&mut parent, i)))
        .collect()
}

/// Invariant factor lists `d₁ | d₂ | …` with each `dᵢ ≥ 2` and product at
/// most `max_order`.
fn invariant_factor_lists(max_order: u32) -> Vec<Vec<u32>> {
    fn extend(cur: &mut Vec<u32>, order: u32, max: u32, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        let start = cur.last().copied().unwrap_or(2);
        let mut d = start;
        while order * d <= max {
            if cur.last().is_none_or(|&l| d % l == 0) {
                cur.push(d);
                extend(cur, order * d, max, out);
                cur.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_order, &mut out);
    out
}

#[test]
fn automorphic_agrees_with_exhaustive_automorphisms() {
    let mut r = rng(7);
    let mut groups = 0;
    for d in invariant_factor_lists(200) {
        let homs: u64 = d
            .iter()
            .map(|&a| d.iter().map(|&b| num_gcd(a, b) as u64).product::<u64>())
            .product();
        if d.is_empty() || homs > 100_000 {
            continue;
        }
        groups += 1;
        let orbits = brute_force_orbits(&d);
        let elems = elements(&d);
        let factors: Vec<i128> = d.iter().map(|&x| x as i128).collect();
        let el = |v: &Vec<u32>| GroupElement {
            torsion: v.iter().map(|&c| c as i128).collect(),
            free: vec![],
        };
        let pairs: Vec<(&Vec<u32>, &Vec<u32>)> = if elems.len() <= 24 {
            elems
                .iter()
                .flat_map(|x| elems.iter().map(move |y| (x, y)))
                .collect()
        } else {
            (0..400)
                .map(|_| (elems.choose(&mut r).unwrap(), elems.choose(&mut r).unwrap()))
                .collect()
        };
        for (x, y) in pairs {
            let want = orbits[x] == orbits[y];
            match automorphic(&factors, &el(x), &el(y)) {
                Decision::Yes => assert!(want, "{d:?}: {x:?} ~ {y:?} claimed"),
                Decision::No(why) => assert!(!want, "{d:?}: {x:?} vs {y:?} refuted: {why}"),
                Decision::Undecided(why) => panic!("{d:?}: undecided for a small group: {why}"),
            }
        }
    }
    assert!(groups > 100, "only {groups} groups checked");
}

fn num_gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * cofactor_det(&minor)
        })
        .sum()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn admissible_words_match_transfer_counts(seed in any::<u64>()) {
        let m = random_matrix(&mut rng(seed), 4);
        for k in 0..=5 {
            let words = m.admissible_words(k);
            prop_assert!(words.iter().all(|w| m.is_admissible(w)));
            prop_assert_eq!(words.iter().collect::<BTreeSet<_>>().len(), words.len());
            prop_assert_eq!(words.len() as u128, transfer_count(&m, k));
        }
    }

    #[test]
    fn connecting_paths_are_admissible(seed in any::<u64>()) {
        let m = random_matrix(&mut rng(seed), 4);
        for &u in m.alphabet() {
            for &v in m.alphabet() {
                let xi = m.connect_path(u, v);
                let mut w = vec![u];
                w.extend_from_slice(xi.symbols());
                w.push(v);
                prop_assert!(m.is_admissible(&w), "{u} {xi} {v}");
                if m.get(u, v) {
                    prop_assert!(xi.is_empty());
                }
            }
            let (s, t, x) = m.distinct_path_pair(u).unwrap();
            prop_assert!(s != t && s.len() == t.len() && !s.is_empty());
            for p in [&s, &t] {
                let mut w = vec![u];
                w.extend_from_slice(p.symbols());
                w.push(x);
                prop_assert!(m.is_admissible(&w), "{u} {p} {x}");
            }
        }
    }

    #[test]
    fn canonical_form_preserves_membership(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_matrix(&mut r, 4);
        let words: BTreeSet<Word> = (0..r.gen_range(0..6))
            .filter_map(|_| m.admissible_words(r.gen_range(0..4)).choose(&mut r).cloned())
            .collect();
        let s = ClopenSet::from_words(&m, words.clone()).unwrap();
        let again = ClopenSet::from_words(&m, s.cylinders().iter().cloned()).unwrap();
        prop_assert_eq!(&again, &s);
        let d = s.depth().max(words.iter().map(|w| w.len()).max().unwrap_or(0));
        for w in m.admissible_words(d + 3) {
            prop_assert_eq!(covered(&words, &w), s.contains_cylinder(&w), "{}", w);
        }
        let text = s.to_string();
        prop_assert_eq!(ClopenSet::parse(&m, &text).unwrap(), s);
    }

    #[test]
    fn clopen_operations_obey_boolean_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_matrix(&mut r, 4);
        let x = random_clopen(&mut r, &m, 3);
        let y = random_clopen(&mut r, &m, 3);
        let z = random_clopen(&mut r, &m, 3);
        let (xy, yx) = (x.union(&y).unwrap(), y.union(&x).unwrap());
        prop_assert_eq!(&xy, &yx);
        prop_assert_eq!(x.intersection(&y).unwrap(), y.intersection(&x).unwrap());
        prop_assert_eq!(xy.complement(), x.complement().intersection(&y.complement()).unwrap());
        prop_assert_eq!(
            x.intersection(&y).unwrap().complement(),
            x.complement().union(&y.complement()).unwrap()
        );
        prop_assert!(x.difference(&x).unwrap().is_empty());
        prop_assert_eq!(x.complement().complement(), x.clone());
        prop_assert_eq!(
            x.intersection(&y.union(&z).unwrap()).unwrap(),
            x.intersection(&y).unwrap().union(&x.intersection(&z).unwrap()).unwrap()
        );
        let d = x.depth().max(y.depth()) + 1;
        let xd = x.difference(&y).unwrap();
        for w in m.admissible_words(d) {
            let (a, b) = (x.contains_cylinder(&w), y.contains_cylinder(&w));
            prop_assert_eq!(xy.contains_cylinder(&w), a || b);
            prop_assert_eq!(xd.contains_cylinder(&w), a && !b);
        }
        let rel = x.compare(&y).unwrap();
        let (sub, sup) = (x.is_subset_of(&y).unwrap(), y.is_subset_of(&x).unwrap());
        match rel {
            Relation::Equal => prop_assert!(sub && sup),
            Relation::Subset => prop_assert!(sub),
            Relation::Superset => prop_assert!(sup && !sub),
            Relation::Disjoint => prop_assert!(x.is_disjoint_from(&y).unwrap() && !sub && !sup),
            Relation::Overlapping => prop_assert!(!sub && !sup && !x.is_disjoint_from(&y).unwrap()),
        }
    }

    #[test]
    fn double_inverse_and_text_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_matrix(&mut r, 4);
        let t = random_table(&mut r, &m, 3, 5);
        prop_assert!(t.inverse().inverse().same_element(&t));
        let parsed = TableMap::parse(&m, &t.to_string()).unwrap();
        prop_assert!(parsed.same_element(&t));
        prop_assert_eq!(parsed.to_string(), t.to_string());
    }

    #[test]
    fn equality_agrees_with_pointwise_comparison(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_matrix(&mut r, 3);
        let t = random_table(&mut r, &m, 2, 3);
        let s = random_table(&mut r, &m, 2, 3);
        // half the time an equal element written differently
        let u = if r.gen_bool(0.5) {
            TableMap::compose(&TableMap::compose(&t, &s).unwrap(), &s.inverse()).unwrap()
        } else {
            s.clone()
        };
        let l = t.canonical().depth() + u.canonical().depth() + 2;
        let (ot, ou) = (ApplyOracle::new(&t), ApplyOracle::new(&u));
        let agree = m.admissible_words(l).into_iter().all(|w| {
            let last = w.last().unwrap();
            let per = m.connect_path(last, last).with(last);
            let x = EpPoint::new(&m, w, per).unwrap();
            ot.apply(&x) == ou.apply(&x)
        });
        prop_assert_eq!(t.canonical() == u.canonical(), agree);
        prop_assert_eq!(t.same_element(&u), agree);
    }

    #[test]
    fn support_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_matrix(&mut r, 4);
        let g = random_table(&mut r, &m, 3, 4);
        let d = random_table(&mut r, &m, 3, 4);
        let (pg, pd) = (g.support(), d.support());
        prop_assert_eq!(g.inverse().support(), pg.clone());
        let pgd = TableMap::compose(&g, &d).unwrap().support();
        prop_assert!(pgd.is_subset_of(&pg.union(&pd).unwrap()).unwrap());

        let (_, fixed) = g.support_and_fixed_set();
        let extra = random_subset(&mut r, &fixed.clopen_part, 1).unwrap_or_else(|| ClopenSet::empty(&m));
        let o = pg.union(&extra).unwrap();
        prop_assert!(g.in_local_subgroup(&o).unwrap());
        prop_assert_eq!(g.image_clopen(&o).unwrap(), o.clone());

        // an element supported off the support of g commutes with it
        if let Some(u) = random_subset(&mut r, &pg.complement(), 1) {
            let rest = pg.union(&u).unwrap().complement();
            if let Some(w) = random_subset(&mut r, &rest, 1) {
                let a = clopen_transport(&u, &w).unwrap().alpha;
                prop_assert!(a.support().is_disjoint_from(&pg).unwrap());
                prop_assert!(g.commutes(&a).unwrap());
            }
        }
    }

    #[test]
    fn transport_swaps_commute(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_matrix(&mut r, 4);
        let u = random_nonempty_clopen(&mut r, &m, 2);
        let Some(w) = random_subset(&mut r, &u.complement(), 1) else { return Ok(()) };
        let alpha = clopen_transport(&u, &w).unwrap().alpha;
        let mut swaps: Vec<TableMap> = alpha
            .restricted_leaves(&u)
            .iter()
            .map(|(a, b)| TableMap::cylinder_swap(&m, a, b).unwrap())
            .collect();
        for _ in 0..3 {
            swaps.shuffle(&mut r);
            let product = swaps
                .iter()
                .fold(TableMap::identity(&m), |acc, s| TableMap::compose(&acc, s).unwrap());
            prop_assert!(product.same_element(&alpha));
        }
    }

    #[test]
    fn smith_form_of_random_matrices(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=5);
        let m: Vec<Vec<i128>> = (0..n).map(|_| (0..n).map(|_| r.gen_range(-6..=6)).collect()).collect();
        let s = smith_normal_form(&m).unwrap();
        prop_assert!(s.check(&m).is_ok());
        let prod: i128 = s.diagonal.iter().product();
        prop_assert_eq!(prod.abs(), cofactor_det(&m).abs());
    }

    #[test]
    fn clopen_class_survives_refinement(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_matrix(&mut r, 4);
        let (g, u): (BfGroup, GroupElement) = bowen_franks(&m).unwrap();
        let x = random_clopen(&mut r, &m, 3);
        let extra = r.gen_range(0..3);
        let mut v = vec![0i128; m.n()];
        for w in x.cylinders() {
            for e in m.extensions(w, extra.max(usize::from(w.is_empty()))) {
                v[e.last().unwrap() as usize - 1] += 1;
            }
        }
        prop_assert_eq!(g.element(&v), clopen_class(&g, &x));
        prop_assert_eq!(clopen_class(&g, &ClopenSet::full(&m)), u);
        for &i in m.alphabet() {
            let row: Vec<i128> = m.alphabet().iter().map(|&j| i128::from(m.get(i, j))).collect();
            prop_assert_eq!(g.basis_class(i as usize), g.element(&row));
        }
    }
}

#[test]
fn random_matrices_share_the_fixture_shape() {
    // the generators above only ever produce valid matrices
    let mut r = rng(1);
    for _ in 0..50 {
        let m: Arc<TransitionMatrix> = random_matrix(&mut r, 4);
        assert!(TransitionMatrix::validate(&m.rows()).is_ok());
        assert!(!ep_points(&m, 1, 2).is_empty());
    }
}
