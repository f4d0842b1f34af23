//! Dense polynomials over a prime field F_p with p < 2^31.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Coefficients low degree first, no trailing zeros.
pub(crate) type Fp = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < (1 << 31));
        Field { p }
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }

    pub fn trim(self, mut a: Fp) -> Fp {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn poly_add(self, a: &Fp, b: &Fp) -> Fp {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| self.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
            .collect();
        self.trim(v)
    }

    pub fn poly_sub(self, a: &Fp, b: &Fp) -> Fp {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| self.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
            .collect();
        self.trim(v)
    }

    pub fn poly_mul(self, a: &Fp, b: &Fp) -> Fp {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        self.trim(out)
    }

    pub fn scale(self, a: &Fp, c: u64) -> Fp {
        self.trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn monic(self, a: &Fp) -> Fp {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    pub fn div_rem(self, a: &Fp, b: &Fp) -> (Fp, Fp) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let inv = self.inv(*b.last().unwrap());
        let db = b.len() - 1;
        let mut r = a.clone();
        let mut q = vec![0u64; a.len() - db];
        for k in (db..r.len()).rev() {
            let c = self.mul(r[k], inv);
            if c == 0 {
                continue;
            }
            q[k - db] = c;
            for (j, &y) in b.iter().enumerate() {
                r[k - db + j] = self.sub(r[k - db + j], self.mul(c, y));
            }
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(self, a: &Fp, b: &Fp) -> Fp {
        self.div_rem(a, b).1
    }

    /// Monic gcd.
    pub fn gcd(self, a: &Fp, b: &Fp) -> Fp {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s a + t b = g` monic.
    pub fn ext_gcd(self, a: &Fp, b: &Fp) -> (Fp, Fp, Fp) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t2 = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let inv = self.inv(*r0.last().expect("not both zero"));
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(self, a: &Fp) -> Fp {
        let v = a.iter().enumerate().skip(1).map(|(k, &c)| self.mul(c, k as u64 % self.p)).collect();
        self.trim(v)
    }

    /// `base^e mod m`.
    pub fn pow_mod(self, base: &Fp, mut e: u128, m: &Fp) -> Fp {
        let mut acc = vec![1u64];
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.poly_mul(&acc, &b), m);
            }
            e >>= 1;
            if e > 0 {
                b = self.rem(&self.poly_mul(&b, &b), m);
            }
        }
        acc
    }

    pub fn is_squarefree(self, a: &Fp) -> bool {
        self.gcd(a, &self.derivative(a)).len() == 1
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(product of all irreducible factors of degree d, d)`.
    pub fn distinct_degree(self, f: &Fp) -> Vec<(Fp, usize)> {
        let mut out = Vec::new();
        let mut rest = f.clone();
        let x = vec![0, 1];
        let mut h = x.clone();
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                let deg = rest.len() - 1;
                out.push((rest, deg));
                break;
            }
            h = self.pow_mod(&h, self.p as u128, &rest);
            let g = self.gcd(&rest, &self.poly_sub(&h, &x));
            if g.len() > 1 {
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
        }
        out
    }

    /// Equal-degree splitting (Cantor-Zassenhaus) of a monic product of
    /// distinct irreducibles of degree `d`.
    pub fn equal_degree(self, f: &Fp, d: usize, rng: &mut ChaCha8Rng) -> Vec<Fp> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.clone()];
        }
        loop {
            let a: Fp = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let g0 = self.gcd(&a, f);
            let g = if g0.len() > 1 {
                g0
            } else {
                // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p - 1)/2)
                let mut t = a.clone();
                let mut norm = a.clone();
                for _ in 1..d {
                    t = self.pow_mod(&t, self.p as u128, f);
                    norm = self.rem(&self.poly_mul(&norm, &t), f);
                }
                let b = self.pow_mod(&norm, ((self.p - 1) / 2) as u128, f);
                self.gcd(&self.poly_sub(&b, &vec![1]), f)
            };
            if g.len() > 1 && g.len() < f.len() {
                let h = self.div_rem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.monic(&h), d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a monic squarefree polynomial, sorted.
    pub fn factor_squarefree(self, f: &Fp, rng: &mut ChaCha8Rng) -> Vec<Fp> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factor_small() {
        let k = Field::new(7);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x - 1)(x - 2)(x^2 + 1) mod 7; x^2 + 1 is irreducible since 7 = 3 mod 4.
        let f = k.poly_mul(&k.poly_mul(&vec![6, 1], &vec![5, 1]), &vec![1, 0, 1]);
        let fs = k.factor_squarefree(&f, &mut rng);
        assert_eq!(fs, vec![vec![5, 1], vec![6, 1], vec![1, 0, 1]]);
    }

    #[test]
    fn extended_gcd_identity() {
        let k = Field::new(101);
        let a = vec![3, 0, 1, 5];
        let b = vec![7, 2, 1];
        let (g, s, t) = k.ext_gcd(&a, &b);
        assert_eq!(k.poly_add(&k.poly_mul(&s, &a), &k.poly_mul(&t, &b)), g);
    }
}
