use std::collections::BTreeMap;

use crate::germs::{Denominator, GermTerm, Poly};
use crate::qlinalg::find_circuit;
use crate::Rat;

/// Which member of a circuit is eliminated last (its power grows while the others shrink).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Pivot {
    /// The largest form of the circuit in canonical order.
    #[default]
    Largest,
    Smallest,
}

/// Rewrites `t` as a sum of terms whose denominator forms are linearly independent.
///
/// A circuit `Σ c_i L_i = 0` with pivot `j` gives
/// `1/Π L^t = −Σ_{i≠j} (c_i/c_j) · 1/Π L^{t + e_j − e_i}`. With the pivot always the
/// extreme form of its circuit, every application moves exponent weight towards that
/// end of the canonical order, and since the total pole degree is fixed the process
/// stops. Terms reaching equal denominators are merged along the way.
pub fn reduce_independent(t: &GermTerm, pivot: Pivot) -> Vec<GermTerm> {
    let mut out = BTreeMap::new();
    reduce_into(&mut out, t.denominator().clone(), t.numerator().clone(), pivot);
    out.into_iter()
        .map(|(den, num)| GermTerm::new(num, den).expect("same dimension"))
        .collect()
}

pub(crate) fn reduce_into(out: &mut BTreeMap<Denominator, Poly>, den: Denominator, num: Poly, pivot: Pivot) {
    let mut pending: BTreeMap<Denominator, Poly> = BTreeMap::new();
    pending.insert(den, num);
    while let Some((den, num)) = pending.pop_first() {
        if num.is_zero() {
            continue;
        }
        let forms: Vec<_> = den.iter().map(|(l, _)| l.clone()).collect();
        let Some(circuit) = find_circuit(&forms) else {
            accumulate(out, den, num);
            continue;
        };
        let slot = match pivot {
            Pivot::Largest => (0..circuit.indices.len()).max_by_key(|&s| &forms[circuit.indices[s]]),
            Pivot::Smallest => (0..circuit.indices.len()).min_by_key(|&s| &forms[circuit.indices[s]]),
        }
        .expect("circuits are nonempty");
        let j = circuit.indices[slot];
        let cj = &circuit.coeffs[slot];
        for (s, &i) in circuit.indices.iter().enumerate() {
            if i == j {
                continue;
            }
            let factor: Rat = -(&circuit.coeffs[s] / cj);
            let mut next = den.clone();
            next[j].1 += 1;
            next[i].1 -= 1;
            next.retain(|(_, m)| *m > 0);
            accumulate(&mut pending, next, num.scale(&factor));
        }
    }
}

fn accumulate(map: &mut BTreeMap<Denominator, Poly>, den: Denominator, num: Poly) {
    match map.entry(den) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(num);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get() + &num;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::{parse, Germ};

    fn term(text: &str, k: usize) -> GermTerm {
        parse(text, k).unwrap().terms()[0].clone()
    }

    fn sum(terms: &[GermTerm], k: usize) -> Germ {
        Germ::from_terms(k, terms.iter().cloned()).unwrap()
    }

    #[test]
    fn independent_terms_are_untouched() {
        let t = term("1/(z1*z2)", 2);
        assert_eq!(reduce_independent(&t, Pivot::Largest), vec![t]);
        let h = term("z1^2+z2", 2);
        assert_eq!(reduce_independent(&h, Pivot::Largest), vec![h]);
    }

    #[test]
    fn triangle_reduces_to_two_terms() {
        let t = term("1/(z1*z2*(z1+z2))", 2);
        let out = reduce_independent(&t, Pivot::Largest);
        let expected = parse("1/(z1*(z1+z2)^2) + 1/(z2*(z1+z2)^2)", 2).unwrap();
        assert!(sum(&out, 2).equals(&expected));
        assert_eq!(out.len(), 2);
        for o in &out {
            assert!(find_circuit(&o.forms().cloned().collect::<Vec<_>>()).is_none());
        }
    }

    #[test]
    fn both_pivots_reconstruct() {
        let t = term("(z1-3*z3)/(z1^2*(z1+z2)*(z2-z3)^2*(z1+z2+z3)*z3)", 3);
        for p in [Pivot::Largest, Pivot::Smallest] {
            let out = reduce_independent(&t, p);
            assert!(sum(&out, 3).equals(&Germ::from_term(t.clone())), "{p:?}");
            for o in &out {
                assert!(find_circuit(&o.forms().cloned().collect::<Vec<_>>()).is_none());
            }
        }
    }
}
