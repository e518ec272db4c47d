//! Frobenius-twisted conjugacy classes in an automorphism group, cocycles
//! determined by their value at Frobenius, and maps induced by stable
//! subgroups.
//!
//! A twisted class is `{ σ^{-1} τ Fr(σ) : σ ∈ G }`. Cocycle values are
//! `v(0) = id`, `v(j + 1) = Φ · Fr(v(j))`.

use serde::Serialize;

use crate::autmap::{group_structure, AutGroup};
use crate::error::{Error, Result};
use crate::gf::Field;

#[derive(Clone, Debug)]
pub struct FrobAction {
    group: AutGroup,
    base: Field,
    perm: Vec<usize>,
    order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

impl FrobClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// The Frobenius of `base` acting on `g`; the group's curve must be defined
/// over `base`.
pub fn frobenius_action(g: &AutGroup, base: Field) -> Result<FrobAction> {
    if !base.is_subfield_of(&g.field()) {
        return Err(Error::IncompatibleFields {
            sub: base.to_string(),
            sup: g.field().to_string(),
        });
    }
    let perm = g
        .elements()
        .iter()
        .map(|a| {
            let fr = a.galois_apply(1, base)?;
            g.index_of(&fr)
                .ok_or_else(|| Error::Inconsistent(format!("Frobenius image of {a} not in group")))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = g.order();
    for a in 0..n {
        for b in 0..n {
            if perm[g.mul(a, b)] != g.mul(perm[a], perm[b]) {
                return Err(Error::Inconsistent(
                    "Frobenius action is not a group automorphism".into(),
                ));
            }
        }
    }
    let mut order = 1;
    let mut cur = perm.clone();
    while cur.iter().enumerate().any(|(i, &x)| i != x) {
        cur = cur.iter().map(|&x| perm[x]).collect();
        order += 1;
    }
    Ok(FrobAction {
        group: g.clone(),
        base,
        perm,
        order,
    })
}

impl FrobAction {
    pub fn group(&self) -> &AutGroup {
        &self.group
    }
    pub fn base(&self) -> Field {
        self.base
    }
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }
    /// Order of the permutation induced by Frobenius.
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
    pub fn frob(&self, a: usize) -> usize {
        self.perm[a]
    }
    /// `Fr^k(a)`
    pub fn frob_pow(&self, a: usize, k: usize) -> usize {
        (0..k % self.order).fold(a, |x, _| self.perm[x])
    }

    /// `σ^{-1} τ Fr(σ)`
    pub fn twisted_conjugate(&self, tau: usize, sigma: usize) -> usize {
        let g = &self.group;
        g.mul(g.mul(g.inverse(sigma), tau), self.frob(sigma))
    }

    pub fn default_cocycle_bound(&self) -> usize {
        self.group.order() * self.order
    }

    /// Twisted classes of the members of `h`, conjugating by `h` only.
    fn classes_within(&self, h: &[usize]) -> Vec<FrobClass> {
        let n = self.group.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for &tau in h {
            if seen[tau] {
                continue;
            }
            let mut members: Vec<usize> =
                h.iter().map(|&s| self.twisted_conjugate(tau, s)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                seen[m] = true;
            }
            classes.push(FrobClass {
                representative: members[0],
                members,
            });
        }
        classes.sort_by_key(|c| c.representative);
        classes
    }

    pub fn is_stable(&self, h: &[usize]) -> bool {
        let mut img: Vec<usize> = h.iter().map(|&a| self.frob(a)).collect();
        img.sort_unstable();
        let mut sorted = h.to_vec();
        sorted.sort_unstable();
        img == sorted
    }
}

/// Partition of the group into twisted classes, sorted by representative.
pub fn frobenius_classes(a: &FrobAction) -> Vec<FrobClass> {
    let all: Vec<usize> = (0..a.group.order()).collect();
    a.classes_within(&all)
}

/// Index into `classes` of the class containing `elem`.
pub fn class_index(classes: &[FrobClass], elem: usize) -> usize {
    classes
        .iter()
        .position(|c| c.members.binary_search(&elem).is_ok())
        .expect("classes partition the group")
}

/// A cocycle given by its value at Frobenius.
#[derive(Clone, Copy, Debug)]
pub struct Cocycle<'a> {
    pub action: &'a FrobAction,
    pub image: usize,
}

impl<'a> Cocycle<'a> {
    pub fn new(action: &'a FrobAction, image: usize) -> Cocycle<'a> {
        Cocycle { action, image }
    }

    /// Value at `Fr^j`: `Φ · Fr(Φ) · … · Fr^{j-1}(Φ)`.
    pub fn value(&self, j: usize) -> usize {
        let g = &self.action.group;
        (0..j).fold(0, |v, _| g.mul(self.image, self.action.frob(v)))
    }

    /// Least `j >= 1` with trivial value, if one is at most `max`.
    pub fn order(&self, max: usize) -> Option<usize> {
        let g = &self.action.group;
        let mut v = 0;
        for j in 1..=max {
            v = g.mul(self.image, self.action.frob(v));
            if v == 0 {
                return Some(j);
            }
        }
        None
    }
}

pub fn cocycle_value(a: &FrobAction, image: usize, j: usize) -> usize {
    Cocycle::new(a, image).value(j)
}

pub fn cocycle_order(a: &FrobAction, image: usize, max: usize) -> Option<usize> {
    Cocycle::new(a, image).order(max)
}

/// Least `d` such that the cocycle becomes a coboundary over the degree-`d`
/// extension, i.e. `v(d) = σ^{-1} Fr^d(σ)` for some σ.
pub fn splitting_degree(a: &FrobAction, image: usize) -> usize {
    let g = &a.group;
    let bound = a.default_cocycle_bound();
    let c = Cocycle::new(a, image);
    for d in 1..=bound {
        let v = c.value(d);
        if (0..g.order()).any(|s| g.mul(g.inverse(s), a.frob_pow(s, d)) == v) {
            return d;
        }
    }
    unreachable!("v(|G| * ord Fr) is a coboundary")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableSubgroup {
    pub elements: Vec<usize>,
    pub cyclic: bool,
    pub normal: bool,
}

impl StableSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// All Frobenius-stable subgroups, sorted by (order, elements).
pub fn stable_subgroups(a: &FrobAction) -> Result<Vec<StableSubgroup>> {
    let st = group_structure(&a.group)?;
    Ok(st
        .subgroups
        .into_iter()
        .filter(|h| a.is_stable(&h.elements))
        .map(|h| StableSubgroup {
            elements: h.elements,
            cyclic: h.cyclic,
            normal: h.normal,
        })
        .collect())
}

/// The map from twisted classes of a stable subgroup `H` to those of `G`.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub subgroup: Vec<usize>,
    pub h_classes: Vec<FrobClass>,
    pub g_classes: Vec<FrobClass>,
    /// For each H-class, the index of the G-class containing it.
    pub images: Vec<usize>,
    /// Number of H-classes landing in the trivial G-class.
    pub kernel_size: usize,
    pub image_size: usize,
    /// Pairs (i, j), i < j, of H-classes outside the kernel with equal image.
    pub collisions: Vec<(usize, usize)>,
}

impl InducedMap {
    pub fn is_injective(&self) -> bool {
        self.kernel_size == 1 && self.collisions.is_empty()
    }
}

pub fn induced_map(a: &FrobAction, h: &[usize]) -> Result<InducedMap> {
    let mut sub = h.to_vec();
    sub.sort_unstable();
    sub.dedup();
    if a.group.generate(&sub) != sub {
        return Err(Error::Precondition("not a subgroup".into()));
    }
    if !a.is_stable(&sub) {
        return Err(Error::NotStable);
    }
    let g_classes = frobenius_classes(a);
    let h_classes = a.classes_within(&sub);
    let images: Vec<usize> = h_classes
        .iter()
        .map(|c| class_index(&g_classes, c.representative))
        .collect();
    let trivial = class_index(&g_classes, 0);
    let kernel_size = images.iter().filter(|&&i| i == trivial).count();
    let mut distinct = images.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let mut collisions = Vec::new();
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] == images[j] && images[i] != trivial {
                collisions.push((i, j));
            }
        }
    }
    Ok(InducedMap {
        subgroup: sub,
        h_classes,
        g_classes,
        images,
        kernel_size,
        image_size: distinct.len(),
        collisions,
    })
}

#[derive(Clone, Debug)]
pub struct CapitulationReport {
    /// Representatives of nontrivial H-classes that become trivial in G.
    pub capitulating: Vec<usize>,
    /// Representatives of the remaining nontrivial H-classes with their
    /// splitting degrees.
    pub surviving: Vec<(usize, usize)>,
}

pub fn capitulation_report(a: &FrobAction, h: &[usize]) -> Result<CapitulationReport> {
    let m = induced_map(a, h)?;
    let trivial = class_index(&m.g_classes, 0);
    let mut capitulating = Vec::new();
    let mut surviving = Vec::new();
    for (c, &img) in m.h_classes.iter().zip(&m.images) {
        if c.members.contains(&0) {
            continue;
        }
        if img == trivial {
            capitulating.push(c.representative);
        } else {
            surviving.push((c.representative, splitting_degree(a, c.representative)));
        }
    }
    Ok(CapitulationReport {
        capitulating,
        surviving,
    })
}

/// A named subgroup selector: `trivial`, `full`, `minus-one` or `C<n>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupSpec {
    Trivial,
    Full,
    MinusOne,
    Cyclic(usize),
}

impl std::str::FromStr for SubgroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<SubgroupSpec> {
        match s {
            "trivial" => Ok(SubgroupSpec::Trivial),
            "full" => Ok(SubgroupSpec::Full),
            "minus-one" => Ok(SubgroupSpec::MinusOne),
            _ => s
                .strip_prefix('C')
                .and_then(|n| n.parse().ok())
                .filter(|&n| n > 0)
                .map(SubgroupSpec::Cyclic)
                .ok_or_else(|| Error::Parse(format!("unknown subgroup {s:?}"))),
        }
    }
}

impl SubgroupSpec {
    /// The selected subgroup; for `C<n>`, the unique cyclic subgroup of
    /// order n if there is one, otherwise the first stable one.
    pub fn resolve(&self, a: &FrobAction) -> Result<Vec<usize>> {
        let g = a.group();
        let h = match *self {
            SubgroupSpec::Trivial => vec![0],
            SubgroupSpec::Full => (0..g.order()).collect(),
            SubgroupSpec::MinusOne => g.generate(&[group_structure(g)?.minus_one]),
            SubgroupSpec::Cyclic(n) => {
                let st = group_structure(g)?;
                let cyclic: Vec<_> = st
                    .subgroups
                    .iter()
                    .filter(|h| h.order() == n && h.cyclic)
                    .collect();
                match cyclic.as_slice() {
                    [] => {
                        return Err(Error::Precondition(format!(
                            "no cyclic subgroup of order {n}"
                        )))
                    }
                    [only] => only.elements.clone(),
                    many => many
                        .iter()
                        .find(|h| a.is_stable(&h.elements))
                        .map(|h| h.elements.clone())
                        .ok_or(Error::NotStable)?,
                }
            }
        };
        if !a.is_stable(&h) {
            return Err(Error::NotStable);
        }
        Ok(h)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClassEntry {
    pub rep: String,
    pub size: usize,
    pub cocycle_order: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClassReport {
    pub base: String,
    pub group_order: usize,
    pub action_order: usize,
    pub classes: Vec<ClassEntry>,
}

/// Class listing with each class's splitting degree.
pub fn class_report(a: &FrobAction) -> ClassReport {
    let classes = frobenius_classes(a)
        .into_iter()
        .map(|c| ClassEntry {
            rep: a.group.element(c.representative).to_string(),
            size: c.size(),
            cocycle_order: splitting_degree(a, c.representative),
        })
        .collect();
    ClassReport {
        base: a.base.to_string(),
        group_order: a.group.order(),
        action_order: a.order,
        classes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autmap::automorphism_group;
    use crate::curve::WeierstrassCurve;

    fn action(p: u64, n: u32, a: [i64; 5]) -> FrobAction {
        let base = Field::new(p, n).unwrap();
        let e = WeierstrassCurve::from_ints(base, a).unwrap();
        frobenius_action(&automorphism_group(&e).unwrap(), base).unwrap()
    }

    fn sizes(classes: &[FrobClass]) -> Vec<usize> {
        let mut s: Vec<usize> = classes.iter().map(|c| c.size()).collect();
        s.sort_unstable();
        s
    }

    const E3: [i64; 5] = [0, 0, 0, -1, 0];
    const E2: [i64; 5] = [0, 0, 1, 0, 0];

    #[test]
    fn action_orders() {
        assert_eq!(action(2, 1, E2).order(), 2);
        assert!(action(2, 2, E2).is_trivial());
        assert!(action(3, 2, E3).is_trivial());
        assert_eq!(action(3, 1, E3).order(), 2);
    }

    #[test]
    fn class_sizes() {
        assert_eq!(
            sizes(&frobenius_classes(&action(3, 1, E3))),
            vec![2, 2, 2, 6]
        );
        assert_eq!(
            sizes(&frobenius_classes(&action(3, 2, E3))),
            vec![1, 1, 2, 2, 3, 3]
        );
        assert_eq!(sizes(&frobenius_classes(&action(2, 1, E2))), vec![6, 6, 12]);
        assert_eq!(sizes(&frobenius_classes(&action(2, 2, E2))).len(), 7);
    }

    #[test]
    fn classes_partition() {
        for (p, n, e) in [
            (3, 1, E3),
            (3, 2, E3),
            (3, 3, E3),
            (2, 1, E2),
            (2, 2, E2),
            (2, 3, E2),
        ] {
            let a = action(p, n, e);
            let classes = frobenius_classes(&a);
            let mut all: Vec<usize> = classes.iter().flat_map(|c| c.members.clone()).collect();
            all.sort_unstable();
            assert_eq!(all, (0..a.group().order()).collect::<Vec<_>>());
            for c in &classes {
                assert_eq!(c.representative, c.members[0]);
                for &m in &c.members {
                    let mut again: Vec<usize> = (0..a.group().order())
                        .map(|s| a.twisted_conjugate(m, s))
                        .collect();
                    again.sort_unstable();
                    again.dedup();
                    assert_eq!(again, c.members);
                }
            }
        }
    }

    #[test]
    fn trivial_action_gives_conjugacy_classes() {
        for (p, n, e) in [(3, 2, E3), (2, 2, E2)] {
            let a = action(p, n, e);
            let st = group_structure(a.group()).unwrap();
            let ours: Vec<Vec<usize>> = frobenius_classes(&a)
                .into_iter()
                .map(|c| c.members)
                .collect();
            assert_eq!(ours, st.conjugacy_classes);
        }
    }

    #[test]
    fn cocycle_identity() {
        for (p, n, e) in [(3, 1, E3), (3, 2, E3), (2, 1, E2), (2, 2, E2), (2, 3, E2)] {
            let a = action(p, n, e);
            for img in 0..a.group().order() {
                let c = Cocycle::new(&a, img);
                for j in 0..=12 {
                    for k in 0..=12 {
                        let lhs = c.value(j + k);
                        let rhs = a.group().mul(c.value(j), a.frob_pow(c.value(k), j));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn degree_eight_cocycles() {
        let a = action(2, 1, E2);
        let g = a.group();
        let f4 = g.field();
        let w = f4.generator();
        let phi = g.index_of_params([f4.one(), w, w * w, w]).unwrap();
        let c = Cocycle::new(&a, phi);
        for j in 1..=7 {
            assert_ne!(c.value(j), 0);
        }
        assert_eq!(c.value(8), 0);
        assert_eq!(c.order(a.default_cocycle_bound()), Some(8));
        assert_eq!(c.value(0), 0);
        assert_eq!(cocycle_order(&a, 0, 10), Some(1));
    }

    #[test]
    fn cocycle_orders_over_f9() {
        let a = action(3, 2, E3);
        let g = a.group();
        let f9 = g.field();
        let (one, zero, i) = (f9.one(), f9.zero(), f9.generator());
        let idx = |u, r| g.index_of_params([u, r, zero, zero]).unwrap();
        assert_eq!(cocycle_order(&a, idx(-one, zero), 50), Some(2));
        assert_eq!(cocycle_order(&a, idx(one, one), 50), Some(3));
        assert_eq!(cocycle_order(&a, idx(i, zero), 50), Some(4));
        let minus_one = idx(-one, zero);
        assert_eq!(a.frob(minus_one), minus_one);
        assert_eq!(cocycle_value(&a, minus_one, 2), 0);
    }

    #[test]
    fn cocycle_over_f4() {
        let a = action(2, 2, E2);
        let g = a.group();
        let f4 = g.field();
        let m = g
            .index_of_params([f4.one(), f4.zero(), f4.zero(), f4.one()])
            .unwrap();
        assert_eq!(cocycle_order(&a, m, 50), Some(2));
    }

    #[test]
    fn splitting_degree_is_least_cocycle_order_in_class() {
        for (p, n, e) in [
            (3, 1, E3),
            (3, 2, E3),
            (3, 3, E3),
            (2, 1, E2),
            (2, 2, E2),
            (2, 3, E2),
        ] {
            let a = action(p, n, e);
            let bound = a.default_cocycle_bound();
            for c in frobenius_classes(&a) {
                let orders: Vec<usize> = c
                    .members
                    .iter()
                    .map(|&m| cocycle_order(&a, m, bound).unwrap())
                    .collect();
                let d = splitting_degree(&a, c.representative);
                assert_eq!(orders.iter().min(), Some(&d), "{p}^{n}");
                assert_eq!(orders[0], d, "{p}^{n}");
                if a.is_trivial() {
                    assert!(orders.iter().all(|&o| o == d), "{p}^{n}: {orders:?}");
                }
                for (&m, &o) in c.members.iter().zip(&orders) {
                    let exp = (0..a.group().order())
                        .map(|x| a.group().element_order(x))
                        .fold(1, lcm);
                    let bound = lcm(a.group().element_order(m), a.order()) * exp;
                    assert_eq!(bound % o, 0);
                    assert!(o <= a.default_cocycle_bound());
                }
            }
        }
    }

    fn lcm(a: usize, b: usize) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        a / gcd(a, b) * b
    }

    #[test]
    fn cocycle_order_varies_within_a_class_when_frobenius_acts() {
        let a = action(3, 1, E3);
        let classes = frobenius_classes(&a);
        let trivial = &classes[class_index(&classes, 0)];
        let minus_one = group_structure(a.group()).unwrap().minus_one;
        assert!(trivial.members.contains(&minus_one));
        assert_eq!(cocycle_order(&a, 0, 10), Some(1));
        assert_eq!(cocycle_order(&a, minus_one, 10), Some(2));
        assert_eq!(splitting_degree(&a, minus_one), 1);
    }

    #[test]
    fn stable_subgroups_examples() {
        let a = action(3, 1, E3);
        let g = a.group();
        let f9 = g.field();
        let zero = f9.zero();
        let phi_i = g
            .index_of_params([f9.generator(), zero, zero, zero])
            .unwrap();
        let h = g.generate(&[phi_i]);
        assert_eq!(h.len(), 4);
        let stable = stable_subgroups(&a).unwrap();
        assert!(stable.iter().any(|s| s.elements == h));
        assert!(stable.iter().any(|s| s.elements == vec![0]));
        assert!(stable.iter().any(|s| s.order() == 12));

        let a = action(2, 1, E2);
        let g = a.group();
        let f4 = g.field();
        let w2 = f4.generator() * f4.generator();
        let phi = g
            .index_of_params([w2, f4.zero(), f4.zero(), f4.one()])
            .unwrap();
        let h = g.generate(&[phi]);
        assert_eq!(h.len(), 6);
        assert!(stable_subgroups(&a)
            .unwrap()
            .iter()
            .any(|s| s.elements == h));
    }

    #[test]
    fn induced_maps() {
        let a = action(3, 2, E3);
        let c3 = SubgroupSpec::Cyclic(3).resolve(&a).unwrap();
        let m = induced_map(&a, &c3).unwrap();
        assert_eq!(m.kernel_size, 1);
        assert_eq!(m.collisions.len(), 1);
        assert!(!m.is_injective());
        let c6 = SubgroupSpec::Cyclic(6).resolve(&a).unwrap();
        let m = induced_map(&a, &c6).unwrap();
        assert_eq!(m.kernel_size, 1);
        assert_eq!(m.collisions.len(), 2);
        let m = induced_map(&a, &[0]).unwrap();
        assert_eq!((m.kernel_size, m.collisions.len(), m.image_size), (1, 0, 1));
    }

    #[test]
    fn minus_one_kernel_mod_four() {
        for (p, expected) in [(7u64, 2usize), (11, 2), (5, 1), (13, 1)] {
            let a = action(p, 1, [0, 0, 0, -1, 0]);
            let h = SubgroupSpec::MinusOne.resolve(&a).unwrap();
            assert_eq!(
                induced_map(&a, &h).unwrap().kernel_size,
                expected,
                "q = {p}"
            );
            let cap = capitulation_report(&a, &h).unwrap();
            assert_eq!(cap.capitulating.len(), expected - 1);
        }
    }

    #[test]
    fn cubic_twists_capitulate_over_f2() {
        let a = action(2, 1, E2);
        let stable3: Vec<_> = stable_subgroups(&a)
            .unwrap()
            .into_iter()
            .filter(|h| h.order() == 3)
            .collect();
        let g = a.group();
        let direct = (0..g.order())
            .filter(|&x| g.element_order(x) == 3 && x < g.mul(x, x))
            .filter(|&x| a.frob(x) == x || a.frob(x) == g.mul(x, x))
            .count();
        assert_eq!(stable3.len(), direct);
        assert_eq!(direct, 2);
        let classes = frobenius_classes(&a);
        for h in stable3 {
            let cap = capitulation_report(&a, &h.elements).unwrap();
            assert!(cap.surviving.is_empty());
            for &x in &h.elements {
                assert_eq!(class_index(&classes, x), class_index(&classes, 0));
            }
        }
    }

    #[test]
    fn unstable_subgroup_rejected() {
        let a = action(2, 1, E2);
        let st = group_structure(a.group()).unwrap();
        let unstable = st
            .subgroups
            .iter()
            .find(|h| !a.is_stable(&h.elements))
            .expect("some subgroup is moved by Frobenius");
        assert!(matches!(
            induced_map(&a, &unstable.elements),
            Err(Error::NotStable)
        ));
    }

    #[test]
    fn subgroup_names() {
        assert_eq!(
            "minus-one".parse::<SubgroupSpec>().unwrap(),
            SubgroupSpec::MinusOne
        );
        assert_eq!(
            "C6".parse::<SubgroupSpec>().unwrap(),
            SubgroupSpec::Cyclic(6)
        );
        assert!("C0".parse::<SubgroupSpec>().is_err());
        assert!("D4".parse::<SubgroupSpec>().is_err());
    }
}
