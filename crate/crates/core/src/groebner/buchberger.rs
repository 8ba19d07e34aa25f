//! Buchberger's algorithm on raw term lists.
//!
//! Pairs are managed with the Gebauer–Möller update, which applies both of
//! Buchberger's criteria (coprime leading monomials and the chain criterion).
//! The pair with the smallest lcm (by total degree, then by the monomial
//! order) is processed first.

use std::cmp::Ordering;

use crate::polyalg::{add_scaled, Field, Monomial, MonomialOrder, Term};

pub(crate) type Terms<F> = Vec<Term<<F as Field>::Elem>>;

/// Field, order and variable count of the ambient ring.
pub(crate) struct Ctx<'a, F: Field> {
    pub field: &'a F,
    pub order: MonomialOrder,
    pub nvars: usize,
}

impl<F: Field> Ctx<'_, F> {
    fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b, self.nvars)
    }

    fn monic(&self, mut p: Terms<F>) -> Terms<F> {
        if let Some((_, lc)) = p.first() {
            if !self.field.is_one(lc) {
                let inv = self.field.inv(lc);
                for t in p.iter_mut() {
                    t.1 = self.field.mul(&t.1, &inv);
                }
            }
        }
        p
    }
}

/// Reducer set with cached leading monomials and support masks.
pub(crate) struct Reducers<'a, F: Field> {
    polys: Vec<&'a Terms<F>>,
    lms: Vec<Monomial>,
    masks: Vec<u64>,
}

impl<'a, F: Field> Reducers<'a, F> {
    pub fn new(polys: impl IntoIterator<Item = &'a Terms<F>>) -> Self {
        let polys: Vec<_> = polys.into_iter().filter(|p| !p.is_empty()).collect();
        let lms: Vec<Monomial> = polys.iter().map(|p| p[0].0).collect();
        let masks = lms.iter().map(Monomial::support_mask).collect();
        Self { polys, lms, masks }
    }

    fn push(&mut self, p: &'a Terms<F>) {
        self.lms.push(p[0].0);
        self.masks.push(p[0].0.support_mask());
        self.polys.push(p);
    }

    #[inline]
    fn find(&self, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        (0..self.lms.len()).find(|&k| self.masks[k] & !mask == 0 && self.lms[k].divides(m))
    }

    /// Full reduction: the remainder has no term divisible by a leading monomial.
    pub fn reduce(&self, ctx: &Ctx<'_, F>, mut p: Terms<F>) -> Terms<F> {
        let mut rem: Terms<F> = Vec::new();
        let mut start = 0;
        while start < p.len() {
            let (m, c) = &p[start];
            match self.find(m) {
                Some(k) => {
                    let g = self.polys[k];
                    let q = self.lms[k].quotient_of(m).expect("divisor");
                    let factor = ctx.field.neg(&ctx.field.div(c, &g[0].1));
                    // leading terms cancel exactly; skip them
                    p = add_scaled(ctx.field, ctx.order, ctx.nvars, &p[start + 1..], &factor, &q, &g[1..]);
                    start = 0;
                }
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
            }
        }
        rem
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// S-polynomial of two monic polynomials.
pub(crate) fn s_polynomial<F: Field>(ctx: &Ctx<'_, F>, f: &Terms<F>, g: &Terms<F>) -> Terms<F> {
    let lcm = f[0].0.lcm(&g[0].0);
    let uf = f[0].0.quotient_of(&lcm).unwrap();
    let ug = g[0].0.quotient_of(&lcm).unwrap();
    let cf = ctx.field.inv(&f[0].1);
    let cg = ctx.field.neg(&ctx.field.inv(&g[0].1));
    let left = add_scaled(ctx.field, ctx.order, ctx.nvars, &[], &cf, &uf, &f[1..]);
    add_scaled(ctx.field, ctx.order, ctx.nvars, &left, &cg, &ug, &g[1..])
}

/// Reduced Gröbner basis (monic, sorted by ascending leading monomial).
pub(crate) fn groebner<F: Field>(ctx: &Ctx<'_, F>, gens: &[Terms<F>]) -> Vec<Terms<F>> {
    let one = ctx.field.one();
    let mut input: Vec<Terms<F>> = gens.iter().filter(|g| !g.is_empty()).map(|g| ctx.monic(g.clone())).collect();
    if input.iter().any(|g| g[0].0.is_one()) {
        return vec![vec![(Monomial::one(), one)]];
    }
    // small leading monomials first: they reduce the rest early
    input.sort_by(|a, b| ctx.cmp(&a[0].0, &b[0].0));

    let mut basis: Vec<Terms<F>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for g in input {
        let reduced = {
            let reducers = Reducers::<F>::new(basis.iter());
            reducers.reduce(ctx, g)
        };
        if reduced.is_empty() {
            continue;
        }
        let h = ctx.monic(reduced);
        if h[0].0.is_one() {
            return vec![vec![(Monomial::one(), one)]];
        }
        basis.push(h);
        active.push(true);
        update(ctx, &basis, &mut active, &mut pairs, basis.len() - 1);
    }

    while let Some(idx) = select(ctx, &pairs) {
        let pair = pairs.swap_remove(idx);
        let s = s_polynomial(ctx, &basis[pair.i], &basis[pair.j]);
        if s.is_empty() {
            continue;
        }
        let reduced = {
            let mut reducers = Reducers::<F>::new(std::iter::empty());
            for (k, b) in basis.iter().enumerate() {
                if active[k] {
                    reducers.push(b);
                }
            }
            reducers.reduce(ctx, s)
        };
        if reduced.is_empty() {
            continue;
        }
        let h = ctx.monic(reduced);
        if h[0].0.is_one() {
            return vec![vec![(Monomial::one(), one)]];
        }
        basis.push(h);
        active.push(true);
        update(ctx, &basis, &mut active, &mut pairs, basis.len() - 1);
    }

    let mut minimal: Vec<Terms<F>> = basis.into_iter().zip(active).filter_map(|(b, a)| a.then_some(b)).collect();
    interreduce(ctx, &mut minimal);
    minimal
}

/// Turn a minimal Gröbner basis into the reduced one.
pub(crate) fn interreduce<F: Field>(ctx: &Ctx<'_, F>, polys: &mut Vec<Terms<F>>) {
    // drop elements whose leading monomial is divisible by another's
    let lms: Vec<Monomial> = polys.iter().map(|p| p[0].0).collect();
    let mut keep = vec![true; polys.len()];
    for i in 0..polys.len() {
        for j in 0..polys.len() {
            if i != j && keep[j] && lms[j].divides(&lms[i]) && (lms[i] != lms[j] || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut kept: Vec<Terms<F>> =
        std::mem::take(polys).into_iter().zip(keep).filter_map(|(p, k)| k.then_some(p)).collect();
    kept.sort_by(|a, b| ctx.cmp(&a[0].0, &b[0].0));
    let mut out: Vec<Terms<F>> = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let head = kept[i][0].clone();
        let tail: Terms<F> = kept[i][1..].to_vec();
        let reducers = Reducers::<F>::new(kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p));
        let mut reduced = vec![head];
        reduced.extend(reducers.reduce(ctx, tail));
        out.push(ctx.monic(reduced));
    }
    *polys = out;
}

fn select<F: Field>(ctx: &Ctx<'_, F>, pairs: &[Pair]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, p) in pairs.iter().enumerate() {
        best = match best {
            None => Some(k),
            Some(b) => {
                let q = &pairs[b];
                let ord = p
                    .lcm
                    .degree()
                    .cmp(&q.lcm.degree())
                    .then_with(|| ctx.cmp(&p.lcm, &q.lcm))
                    .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)));
                if ord == Ordering::Less {
                    Some(k)
                } else {
                    Some(b)
                }
            }
        };
    }
    best
}

/// Gebauer–Möller update after appending `basis[h]`.
fn update<F: Field>(_ctx: &Ctx<'_, F>, basis: &[Terms<F>], active: &mut [bool], pairs: &mut Vec<Pair>, h: usize) {
    let lm_h = basis[h][0].0;
    let mut candidates: Vec<(usize, Monomial, bool)> = (0..h)
        .filter(|&g| active[g])
        .map(|g| {
            let lm_g = basis[g][0].0;
            (g, lm_g.lcm(&lm_h), lm_g.is_coprime(&lm_h))
        })
        .collect();

    // chain criterion among the new pairs
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    while let Some(cand) = candidates.pop() {
        let (_, lcm, coprime) = cand;
        let dominated = !coprime && candidates.iter().chain(kept.iter()).any(|(_, other, _)| other.divides(&lcm));
        if !dominated {
            kept.push(cand);
        }
    }
    // the coprime criterion
    let new_pairs = kept.into_iter().filter(|(_, _, coprime)| !coprime);

    // prune old pairs whose lcm is strictly covered through h
    pairs.retain(|p| {
        if !lm_h.divides(&p.lcm) {
            return true;
        }
        let li = basis[p.i][0].0.lcm(&lm_h);
        let lj = basis[p.j][0].0.lcm(&lm_h);
        li == p.lcm || lj == p.lcm
    });

    pairs.extend(new_pairs.map(|(g, lcm, _)| Pair { i: g, j: h, lcm }));

    for g in 0..h {
        if active[g] && lm_h.divides(&basis[g][0].0) {
            active[g] = false;
        }
    }
}

/// Every S-polynomial of `basis` reduces to zero modulo `basis`.
pub(crate) fn satisfies_buchberger_criterion<F: Field>(ctx: &Ctx<'_, F>, basis: &[Terms<F>]) -> bool {
    let reducers = Reducers::<F>::new(basis.iter());
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if basis[i][0].0.is_coprime(&basis[j][0].0) {
                continue;
            }
            let s = s_polynomial(ctx, &basis[i], &basis[j]);
            if !reducers.reduce(ctx, s).is_empty() {
                return false;
            }
        }
    }
    true
}
