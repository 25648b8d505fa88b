//! Shortest-path reference for the word metric.
//!
//! Built without the closed-form tensor formulas: level `k + 1` is the
//! disjoint union of copies of level `k` (one per letter, distances halved,
//! distance 1 across copies), with each generating gluing turned into a
//! zero-weight edge. Floyd–Warshall over that graph gives the quotient
//! metric; nodes at distance 0 are then merged into one point.
//!
//! At level `k` every distance is a multiple of `2^-k`, so weights are kept as
//! integers in those units and converted to [`Dyadic`] on the way out.

use crate::alphabet::{Alphabet, Base};
use crate::dyadic::Dyadic;

use super::{enumerate_words, AddressError, AddressWord};

pub const MAX_ORACLE_DEPTH_BI: usize = 10;
pub const MAX_ORACLE_DEPTH_TRI: usize = 5;

/// Distances between all raw words of one depth.
#[derive(Debug, Clone)]
pub struct OracleTable {
    alphabet: Alphabet,
    depth: usize,
    words: Vec<AddressWord>,
    /// point index of each word
    point_of: Vec<usize>,
    /// point-to-point distances in units of `2^-depth`
    dist: Vec<Vec<u64>>,
}

impl OracleTable {
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Words in [`enumerate_words`] order.
    pub fn words(&self) -> &[AddressWord] {
        &self.words
    }

    /// Number of distinct points after merging glued words.
    pub fn point_count(&self) -> usize {
        self.dist.len()
    }

    /// The merged point that word `i` lands on.
    pub fn point_of(&self, i: usize) -> usize {
        self.point_of[i]
    }

    pub fn distance(&self, i: usize, j: usize) -> Dyadic {
        let v = self.dist[self.point_of[i]][self.point_of[j]];
        Dyadic::new(v, self.depth as u32)
    }
}

struct Level {
    /// point index of each word at this level
    point_of: Vec<usize>,
    dist: Vec<Vec<u64>>,
    /// point index of each distinguished point, by `Base::index`
    distinguished: Vec<usize>,
}

fn floyd_warshall(w: &mut [Vec<u64>]) {
    let n = w.len();
    for k in 0..n {
        for i in 0..n {
            let wik = w[i][k];
            for j in 0..n {
                let via = wik + w[k][j];
                if via < w[i][j] {
                    w[i][j] = via;
                }
            }
        }
    }
}

fn next_level(alphabet: Alphabet, prev: &Level, word_count: usize, level: usize) -> Level {
    let letters = alphabet.letters();
    let p = prev.dist.len();
    let n = letters.len() * p;
    let node = |li: usize, pi: usize| li * p + pi;
    // units of 2^-level: half of a previous distance keeps its integer value
    let cross = 1u64 << level;

    let mut w = vec![vec![0u64; n]; n];
    for li in 0..letters.len() {
        for lj in 0..letters.len() {
            for pi in 0..p {
                for pj in 0..p {
                    w[node(li, pi)][node(lj, pj)] =
                        if li == lj { prev.dist[pi][pj] } else { cross };
                }
            }
        }
    }
    for g in alphabet.gluings() {
        let a = node(g.left.0.index(), prev.distinguished[g.left.1.index()]);
        let b = node(g.right.0.index(), prev.distinguished[g.right.1.index()]);
        w[a][b] = 0;
        w[b][a] = 0;
    }
    floyd_warshall(&mut w);

    let mut point_of_node = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for v in 0..n {
        if point_of_node[v] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(v);
        for u in v..n {
            if w[v][u] == 0 {
                point_of_node[u] = id;
            }
        }
    }
    let dist = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| w[a][b]).collect())
        .collect();
    let mut point_of = Vec::with_capacity(letters.len() * word_count);
    for li in 0..letters.len() {
        for &pi in &prev.point_of {
            point_of.push(point_of_node[node(li, pi)]);
        }
    }
    let distinguished = alphabet
        .bases()
        .iter()
        .map(|&b: &Base| {
            point_of_node[node(b.extension_letter().index(), prev.distinguished[b.index()])]
        })
        .collect();
    Level {
        point_of,
        dist,
        distinguished,
    }
}

/// Full distance table on the words of `depth` letters.
pub fn oracle_distance_table(
    alphabet: Alphabet,
    depth: usize,
) -> Result<OracleTable, AddressError> {
    let cap = match alphabet {
        Alphabet::Bi => MAX_ORACLE_DEPTH_BI,
        Alphabet::Tri => MAX_ORACLE_DEPTH_TRI,
    };
    if depth > cap {
        return Err(AddressError::OracleDepth {
            alphabet,
            depth,
            cap,
        });
    }
    let k = alphabet.arity();
    let mut level = Level {
        point_of: (0..k).collect(),
        dist: (0..k)
            .map(|i| (0..k).map(|j| u64::from(i != j)).collect())
            .collect(),
        distinguished: (0..k).collect(),
    };
    let mut word_count = k;
    for l in 1..=depth {
        level = next_level(alphabet, &level, word_count, l);
        word_count *= k;
    }
    Ok(OracleTable {
        alphabet,
        depth,
        words: enumerate_words(alphabet, depth),
        point_of: level.point_of,
        dist: level.dist,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_counts() {
        // 2^k + 1 points on the interval, 3(3^k + 1)/2 gasket vertices
        for k in 0..=6 {
            let t = oracle_distance_table(Alphabet::Bi, k).unwrap();
            assert_eq!(t.point_count(), (1 << k) + 1);
        }
        for k in 0..=4u32 {
            let t = oracle_distance_table(Alphabet::Tri, k as usize).unwrap();
            assert_eq!(t.point_count(), 3 * (3usize.pow(k) + 1) / 2);
        }
    }

    #[test]
    fn diagonal_is_zero() {
        for (alphabet, depth) in [(Alphabet::Bi, 5), (Alphabet::Tri, 3)] {
            let t = oracle_distance_table(alphabet, depth).unwrap();
            for i in 0..t.words().len() {
                assert!(t.distance(i, i).is_zero());
            }
        }
    }

    #[test]
    fn caps() {
        assert!(oracle_distance_table(Alphabet::Tri, 6).is_err());
        assert!(oracle_distance_table(Alphabet::Bi, 11).is_err());
    }

    #[test]
    fn depth_one_bi_pointed_values() {
        let t = oracle_distance_table(Alphabet::Bi, 1).unwrap();
        let texts: Vec<String> = t.words().iter().map(|w| w.to_string()).collect();
        assert_eq!(texts, ["l.B", "l.T", "r.B", "r.T"]);
        let half = Dyadic::new(1, 1);
        assert_eq!(t.distance(0, 3), Dyadic::one());
        assert_eq!(t.distance(1, 2), Dyadic::zero());
        assert_eq!(t.distance(0, 1), half);
        assert_eq!(t.distance(0, 2), half);
        assert_eq!(t.distance(2, 3), half);
    }
}
