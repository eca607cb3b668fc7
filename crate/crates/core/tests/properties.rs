mod common;

use common::*;
use merogerm::appendix::split_linear;
use merogerm::evaluators::{eval_ms, finite_part, speer_f, speer_sigma};
use merogerm::germs::{dep_subspace, indep_subspace, parse, Germ, LinearForm, Poly};
use merogerm::qlinalg::{find_circuit, Subspace};
use merogerm::splitq::{decompose, pi_q, reduce_independent, Pivot};
use merogerm::{InnerProductFamily, Rat};
use num_traits::Zero;
use proptest::prelude::*;

fn family(which: u8, k: usize) -> InnerProductFamily {
    match (which % 2, k) {
        (0, _) | (_, 1) => InnerProductFamily::identity(),
        (_, 2) => coupled_q2(),
        _ => coupled_q(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orth_complement_is_complementary(seed in any::<u64>(), k in 1usize..=4, which in any::<u8>()) {
        let mut r = rng(seed);
        let q = family(which, k);
        let w = Subspace::span(k, vec![to_rats(&int_vector(&mut r, k, 3))]).unwrap();
        let c = q.orth_complement_dual(&w);
        prop_assert_eq!(w.dim() + c.dim(), k);
        prop_assert!(q.subspaces_orthogonal(&w, &c).unwrap());
    }

    #[test]
    fn circuits_are_minimal_dependencies(seed in any::<u64>(), k in 1usize..=3, n in 1usize..=5) {
        let mut r = rng(seed);
        let mut forms: Vec<LinearForm> = (0..n).map(|_| form(&mut r, k)).collect();
        forms.sort();
        forms.dedup();
        if let Some(c) = find_circuit(&forms) {
            let mut sum = vec![Rat::zero(); k];
            for (i, ci) in c.indices.iter().zip(&c.coeffs) {
                for (s, v) in sum.iter_mut().zip(forms[*i].to_rats()) {
                    *s += ci * v;
                }
            }
            prop_assert!(sum.iter().all(Zero::is_zero));
            prop_assert!(c.coeffs.iter().all(|x| !x.is_zero()));
        } else {
            let rows: Vec<_> = forms.iter().map(LinearForm::to_rats).collect();
            prop_assert_eq!(Subspace::span(k, rows).unwrap().dim(), forms.len());
        }
    }

    #[test]
    fn dep_annihilates_indep(seed in any::<u64>(), k in 1usize..=4) {
        let mut r = rng(seed);
        let f = germ(&mut r, k, 3, 2, 2);
        let indep = indep_subspace(&f);
        let dep = dep_subspace(&f);
        prop_assert_eq!(indep.dim() + dep.dim(), k);
        for v in indep.basis_rows() {
            for l in dep.basis_rows() {
                let pairing: Rat = v.iter().zip(&l).map(|(a, b)| a * b).sum();
                prop_assert!(pairing.is_zero());
            }
        }
    }

    #[test]
    fn render_parse_round_trip(seed in any::<u64>(), k in 1usize..=4) {
        let mut r = rng(seed);
        let f = germ(&mut r, k, 3, 3, 3);
        let back = parse(&f.to_string(), k).unwrap();
        prop_assert!(back.equals(&f), "{} reparsed as {}", f, back);
    }

    #[test]
    fn germ_ring_laws(seed in any::<u64>(), k in 1usize..=3) {
        let mut r = rng(seed);
        let a = germ(&mut r, k, 2, 2, 2);
        let b = germ(&mut r, k, 2, 2, 2);
        let c = germ(&mut r, k, 2, 2, 2);
        prop_assert!((&a * &b).equals(&(&b * &a)));
        prop_assert!((&a * &(&b + &c)).equals(&(&(&a * &b) + &(&a * &c))));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn reduction_preserves_value(seed in any::<u64>(), k in 1usize..=3, smallest in any::<bool>()) {
        let mut r = rng(seed);
        let t = term(&mut r, k, 3, 4, 2);
        let pivot = if smallest { Pivot::Smallest } else { Pivot::Largest };
        let parts = reduce_independent(&t, pivot);
        let sum = Germ::from_terms(k, parts.clone()).unwrap();
        prop_assert!(sum.equals(&Germ::from_term(t)));
        for p in &parts {
            let rows: Vec<_> = p.forms().map(LinearForm::to_rats).collect();
            prop_assert_eq!(Subspace::span(k, rows).unwrap().dim(), p.denominator().len());
        }
    }

    #[test]
    fn pi_q_is_linear_and_idempotent(seed in any::<u64>(), k in 1usize..=4, which in any::<u8>()) {
        let mut r = rng(seed);
        let q = family(which, k);
        let f = germ(&mut r, k, 3, 3, 2);
        let g = germ(&mut r, k, 3, 3, 2);
        let c = small_rat(&mut r);
        prop_assert_eq!(pi_q(&(&f + &g.scale(&c)), &q), &pi_q(&f, &q) + &pi_q(&g, &q).scale(&c));
        let p = pi_q(&f, &q);
        prop_assert_eq!(pi_q(&Germ::from_poly(p.clone()), &q), p);
    }

    #[test]
    fn polar_part_has_zero_projection(seed in any::<u64>(), k in 1usize..=4, which in any::<u8>()) {
        let mut r = rng(seed);
        let q = family(which, k);
        let d = decompose(&germ(&mut r, k, 3, 3, 2), &q);
        prop_assert!(pi_q(&d.polar_germ(), &q).is_zero());
    }

    #[test]
    fn finite_part_matches_oracle(seed in any::<u64>(), k in 1usize..=3, j in 1usize..=3) {
        prop_assume!(j <= k);
        let mut r = rng(seed);
        let f = germ(&mut r, k, 3, 2, 2);
        let ej = finite_part(&f, j).unwrap();
        prop_assert!(ej.terms().iter().all(|t| t.numerator().degree_in(j - 1) == 0 && t.forms().all(|l| l.coeff(j - 1).is_zero())));
        for _ in 0..4 {
            let point = random_point(&mut r, k);
            if let (Some(expected), Some(got)) = (finite_part_at(&f, j, &point), eval_at(&ej, &point)) {
                prop_assert_eq!(expected, got);
            }
        }
    }

    #[test]
    fn speer_f_is_the_permutation_average(seed in any::<u64>(), k in 1usize..=3) {
        let mut r = rng(seed);
        let f = germ(&mut r, k, 3, 2, 2);
        let perms: Vec<Vec<usize>> = match k {
            1 => vec![vec![1]],
            2 => vec![vec![1, 2], vec![2, 1]],
            _ => vec![vec![1, 2, 3], vec![1, 3, 2], vec![2, 1, 3], vec![2, 3, 1], vec![3, 1, 2], vec![3, 2, 1]],
        };
        let n = perms.len() as i64;
        let avg = perms.iter().map(|s| speer_sigma(&f, s).unwrap()).sum::<Rat>() / merogerm::rat(n, 1);
        prop_assert_eq!(speer_f(&f).unwrap(), avg);
    }

    #[test]
    fn split_linear_reconstructs(seed in any::<u64>(), k in 1usize..=4, which in any::<u8>()) {
        let mut r = rng(seed);
        let q = family(which, k);
        let f = poly(&mut r, k, 4, 4);
        let l = form(&mut r, k);
        let s = split_linear(&f, &l, &q).unwrap();
        prop_assert_eq!(&(&Poly::from_form(&l) * &s.g) + &s.h, f);
    }

    #[test]
    fn ms_scales_linearly(seed in any::<u64>(), k in 1usize..=3) {
        let mut r = rng(seed);
        let q = InnerProductFamily::identity();
        let f = germ(&mut r, k, 3, 2, 2);
        let c = small_rat(&mut r);
        prop_assert_eq!(eval_ms(&f.scale(&c), &q), eval_ms(&f, &q) * c);
    }
}

/// Embedding stability needs `Q_{k+1}` to restrict to `Q_k` with no coupling to the
/// new coordinate. With a coupled block on `z1..z3` and `k = 2`, the new coordinate
/// `z3` is coupled to `z2`, and the projection of `z2/(z1+z2)` changes.
#[test]
fn embedding_below_block_dimension_changes_pi_q() {
    let q = coupled_q();
    let f = parse("z2/(z1+z2)", 2).unwrap();
    let here = pi_q(&f, &q);
    let up = pi_q(&f.embed(3).unwrap(), &q);
    assert_ne!(here.embed(3).unwrap(), up);
    let id = InnerProductFamily::identity();
    assert_eq!(pi_q(&f, &id).embed(3).unwrap(), pi_q(&f.embed(3).unwrap(), &id));
}

/// Permuting variables commutes with `π_Q` for a permutation-invariant `Q`.
#[test]
fn pi_q_commutes_with_coordinate_permutations() {
    let mut r = rng(99);
    let q = InnerProductFamily::identity();
    for _ in 0..40 {
        let k = 3;
        let f = germ(&mut r, k, 3, 3, 2);
        let swap: Vec<Poly> = vec![Poly::var(k, 2), Poly::var(k, 0), Poly::var(k, 1)];
        let text = f.to_string().replace("z1", "a").replace("z2", "b").replace("z3", "c");
        let g = parse(&text.replace('a', "z3").replace('b', "z1").replace('c', "z2"), k).unwrap();
        assert_eq!(pi_q(&f, &q).substitute(&swap), pi_q(&g, &q), "{f}");
    }
}
