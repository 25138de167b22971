use std::fmt;

use super::group::GroupRef;
use super::subgroup::generates;
use crate::error::{Error, Result};

/// Letter `i+1` is generator `i`, letter `-(i+1)` its inverse.
pub type Word = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub names: Vec<char>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<char>, relators: Vec<Word>) -> Result<Self> {
        let n = names.len() as i32;
        if relators.iter().flatten().any(|&l| l == 0 || l.abs() > n) {
            return Err(Error::InvalidPresentation("relator uses an unknown generator".into()));
        }
        Ok(Presentation { names, relators })
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    /// Parses `"x,y | x^2, y^3, (xy)^2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('<').trim_end_matches('>');
        let (gens, rels) = s
            .split_once('|')
            .ok_or_else(|| Error::InvalidPresentation("expected 'generators | relators'".into()))?;
        let names: Vec<char> = gens
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                let mut c = t.chars();
                match (c.next(), c.next()) {
                    (Some(ch), None) if ch.is_ascii_alphabetic() => Ok(ch),
                    _ => Err(Error::InvalidPresentation(format!("generator name '{t}' must be one letter"))),
                }
            })
            .collect::<Result<_>>()?;
        let relators = rels
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                let chars: Vec<char> = t.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
                let mut pos = 0;
                let w = parse_word(&chars, &mut pos, &names)?;
                if pos != chars.len() {
                    return Err(Error::InvalidPresentation(format!("trailing input in '{t}'")));
                }
                Ok(w)
            })
            .collect::<Result<_>>()?;
        Presentation::new(names, relators)
    }

    /// Evaluates a word on the given generator images.
    pub fn evaluate(&self, g: &GroupRef, images: &[usize], w: &[i32]) -> usize {
        w.iter().fold(g.identity(), |acc, &l| {
            let x = images[(l.unsigned_abs() - 1) as usize];
            g.mul(acc, if l > 0 { x } else { g.inv(x) })
        })
    }

    /// Checks that `gen_images` satisfy the relators, generate `g`, and that
    /// the presented group has exactly `|g|` elements.
    pub fn verify_defines(&self, g: &GroupRef, gen_images: &[usize]) -> Result<()> {
        if gen_images.len() != self.names.len() {
            return Err(Error::InvalidPresentation("one image per generator is required".into()));
        }
        for (i, r) in self.relators.iter().enumerate() {
            if self.evaluate(g, gen_images, r) != g.identity() {
                return Err(Error::InvalidPresentation(format!("relator {i} does not hold in {}", g.label())));
            }
        }
        if !generates(g, gen_images) {
            return Err(Error::InvalidPresentation("images do not generate the group".into()));
        }
        let n = coset_enumeration(self, 20 * g.order().max(100))?;
        if n != g.order() {
            return Err(Error::InvalidPresentation(format!(
                "presented group has order {n}, not {}",
                g.order()
            )));
        }
        Ok(())
    }
}

fn parse_word(chars: &[char], pos: &mut usize, names: &[char]) -> Result<Word> {
    let mut w = Vec::new();
    while *pos < chars.len() && chars[*pos] != ')' {
        let atom: Word = match chars[*pos] {
            '(' => {
                *pos += 1;
                let inner = parse_word(chars, pos, names)?;
                if chars.get(*pos) != Some(&')') {
                    return Err(Error::InvalidPresentation("unbalanced parentheses".into()));
                }
                *pos += 1;
                inner
            }
            c => {
                let i = names
                    .iter()
                    .position(|&n| n == c)
                    .ok_or_else(|| Error::InvalidPresentation(format!("unknown generator '{c}'")))?;
                *pos += 1;
                vec![i as i32 + 1]
            }
        };
        let mut exp: i64 = 1;
        if chars.get(*pos) == Some(&'^') {
            *pos += 1;
            let start = *pos;
            if chars.get(*pos) == Some(&'-') {
                *pos += 1;
            }
            while chars.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                *pos += 1;
            }
            let text: String = chars[start..*pos].iter().collect();
            exp = text
                .parse()
                .map_err(|_| Error::InvalidPresentation(format!("bad exponent '{text}'")))?;
        }
        let piece: Word = if exp >= 0 {
            atom.clone()
        } else {
            atom.iter().rev().map(|&l| -l).collect()
        };
        for _ in 0..exp.unsigned_abs() {
            w.extend_from_slice(&piece);
        }
    }
    Ok(free_reduce(&w))
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.names.iter().map(|c| c.to_string()).collect();
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&l| {
                        let c = self.names[(l.unsigned_abs() - 1) as usize];
                        if l > 0 {
                            c.to_string()
                        } else {
                            format!("{c}^-1")
                        }
                    })
                    .collect::<String>()
            })
            .collect();
        write!(f, "<{} | {}>", gens.join(","), rels.join(", "))
    }
}

const UNDEF: usize = usize::MAX;

struct CosetTable {
    cols: usize,
    table: Vec<Vec<usize>>,
    forward: Vec<usize>,
    limit: usize,
}

impl CosetTable {
    fn col(l: i32) -> usize {
        let i = (l.unsigned_abs() - 1) as usize;
        if l > 0 {
            2 * i
        } else {
            2 * i + 1
        }
    }

    fn inv_col(c: usize) -> usize {
        c ^ 1
    }

    fn live(&self, c: usize) -> bool {
        self.forward[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.table.len() >= self.limit {
            return Err(Error::bound("coset table size", self.limit as u128, self.table.len() as u128 + 1));
        }
        let n = self.table.len();
        self.table.push(vec![UNDEF; self.cols]);
        self.forward.push(n);
        self.table[c][x] = n;
        self.table[n][Self::inv_col(x)] = c;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.forward[r] != r {
            r = self.forward[r];
        }
        let mut x = c;
        while self.forward[x] != r {
            let next = self.forward[x];
            self.forward[x] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (m, n) = (a.min(b), a.max(b));
        self.forward[n] = m;
        queue.push(n);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let g = queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.table[g][x];
                if d == UNDEF {
                    continue;
                }
                let xi = Self::inv_col(x);
                if self.table[d][xi] == g {
                    self.table[d][xi] = UNDEF;
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.table[mu][x] != UNDEF {
                    let t = self.table[mu][x];
                    self.merge(nu, t, &mut queue);
                } else if self.table[nu][xi] != UNDEF {
                    let t = self.table[nu][xi];
                    self.merge(mu, t, &mut queue);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][xi] = mu;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, a: usize, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = a;
        let mut b = a;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.table[f][w[i]] != UNDEF {
                f = self.table[f][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != a {
                    self.coincidence(f, a);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b][Self::inv_col(w[j as usize])] != UNDEF {
                b = self.table[b][Self::inv_col(w[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.table[f][w[i]] = b;
                self.table[b][Self::inv_col(w[i])] = f;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

/// Order of the presented group by Hasse–Lowe–Todd coset enumeration over
/// the trivial subgroup; fails once more than `limit` cosets are defined.
pub fn coset_enumeration(p: &Presentation, limit: usize) -> Result<usize> {
    let cols = 2 * p.generator_count();
    if cols == 0 {
        return Ok(1);
    }
    let rels: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r| r.iter().map(|&l| CosetTable::col(l)).collect())
        .collect();
    let mut t = CosetTable {
        cols,
        table: vec![vec![UNDEF; cols]],
        forward: vec![0],
        limit,
    };
    let mut a = 0;
    while a < t.table.len() {
        if t.live(a) {
            for r in &rels {
                if !t.live(a) {
                    break;
                }
                t.scan_and_fill(a, r)?;
            }
            if t.live(a) {
                for x in 0..cols {
                    if t.table[a][x] == UNDEF {
                        t.define(a, x)?;
                    }
                }
            }
        }
        a += 1;
    }
    Ok((0..t.table.len()).filter(|&c| t.live(c)).count())
}
