//! Deterministic Schreier-Sims: a base and strong generating set from arbitrary generators,
//! giving exact group orders and membership tests.

use num_bigint::BigUint;
use num_traits::One;

use super::perm::Perm;

struct Level {
    point: usize,
    gens: Vec<Perm>,
    /// `transversal[x]` maps `point` to `x`, for every `x` in the orbit.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        Level { point, gens: Vec::new(), transversal: vec![None; degree], orbit: Vec::new() }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.point] = Some(Perm::identity(degree));
        self.orbit = vec![self.point];
        let mut next = 0;
        while next < self.orbit.len() {
            let x = self.orbit[next];
            next += 1;
            for s in &self.gens {
                let y = s.image(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().unwrap().then(s);
                    self.transversal[y] = Some(u);
                    self.orbit.push(y);
                }
            }
        }
    }
}

pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Perm]) -> Self {
        let gens: Vec<Perm> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut chain = StabChain { degree, levels: Vec::new() };
        // initial base: every generator moves some base point
        for g in &gens {
            debug_assert_eq!(g.degree(), degree);
            if chain.levels.iter().all(|l| g.image(l.point) == l.point) {
                let p = (0..degree).find(|&x| g.image(x) != x).unwrap();
                chain.levels.push(Level::new(p, degree));
            }
        }
        for l in 0..chain.levels.len() {
            let fixing: Vec<Perm> = gens
                .iter()
                .filter(|g| chain.levels[..l].iter().all(|lv| g.image(lv.point) == lv.point))
                .cloned()
                .collect();
            chain.levels[l].gens = fixing;
            chain.levels[l].rebuild_orbit();
        }
        chain.complete();
        chain
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        'outer: while i > 0 {
            let level = i - 1;
            let orbit = self.levels[level].orbit.clone();
            let gens = self.levels[level].gens.clone();
            for &beta in &orbit {
                for s in &gens {
                    let u_beta = self.levels[level].transversal[beta].as_ref().unwrap();
                    let target = s.image(beta);
                    let u_target = self.levels[level].transversal[target].as_ref().unwrap();
                    let h = u_beta.then(s).then(&u_target.inverse());
                    if h.is_identity() {
                        continue;
                    }
                    let (residue, stop) = self.strip(h, level + 1);
                    if stop < self.levels.len() || !residue.is_identity() {
                        if stop == self.levels.len() {
                            let p = (0..self.degree).find(|&x| residue.image(x) != x).unwrap();
                            self.levels.push(Level::new(p, self.degree));
                        }
                        for l in level + 1..=stop {
                            self.levels[l].gens.push(residue.clone());
                            self.levels[l].rebuild_orbit();
                        }
                        i = stop + 1;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    /// Sifts `h` through the levels from `from`; returns the residue and the level where
    /// sifting stopped (`levels.len()` if it went all the way through).
    fn strip(&self, mut h: Perm, from: usize) -> (Perm, usize) {
        for l in from..self.levels.len() {
            let beta = h.image(self.levels[l].point);
            match &self.levels[l].transversal[beta] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * l.orbit.len())
    }

    pub fn contains(&self, p: &Perm) -> bool {
        let (residue, stop) = self.strip(p.clone(), 0);
        stop == self.levels.len() && residue.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(degree: usize, pts: &[usize]) -> Perm {
        let mut images: Vec<usize> = (0..degree).collect();
        for w in 0..pts.len() {
            images[pts[w]] = pts[(w + 1) % pts.len()];
        }
        Perm::from_images(images)
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=9 {
            let gens = [cycle(n, &[0, 1]), cycle(n, &(0..n).collect::<Vec<_>>())];
            let chain = StabChain::new(n, &gens);
            let expected: u64 = (1..=n as u64).product();
            assert_eq!(chain.order(), BigUint::from(expected));
        }
    }

    #[test]
    fn trivial_and_cyclic_groups() {
        assert_eq!(StabChain::new(5, &[]).order(), BigUint::one());
        let c = cycle(6, &[0, 1, 2, 3, 4, 5]);
        let chain = StabChain::new(6, std::slice::from_ref(&c));
        assert_eq!(chain.order(), BigUint::from(6u32));
        assert!(chain.contains(&c.then(&c)));
        assert!(!chain.contains(&cycle(6, &[0, 1])));
    }

    #[test]
    fn wreath_product_order() {
        // S_3 wr S_2 on two blocks of three points: order 2 * 6^2
        let gens = [
            cycle(6, &[0, 1]),
            cycle(6, &[0, 1, 2]),
            Perm::from_images(vec![3, 4, 5, 0, 1, 2]),
        ];
        assert_eq!(StabChain::new(6, &gens).order(), BigUint::from(72u32));
    }

    #[test]
    fn alternating_group_order() {
        let gens = [cycle(7, &[0, 1, 2]), cycle(7, &[2, 3, 4, 5, 6])];
        assert_eq!(StabChain::new(7, &gens).order(), BigUint::from(2520u32));
    }
}
