//! The two fixed alphabets, their letters and base (distinguished-point) symbols.

use std::fmt;

/// `M₂ = {l, r}` for the bi-pointed functor, `M₃ = {a, b, c}` for the tri-pointed one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alphabet {
    Bi,
    Tri,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    L,
    R,
    A,
    B,
    C,
}

/// Distinguished-point symbols: `⊥, ⊤` for bi-pointed spaces, `T, L, R` for tri-pointed ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    Bot,
    Top,
    T,
    L,
    R,
}

/// A generating identification `m ⊗ u = n ⊗ v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gluing {
    pub left: (Letter, Base),
    pub right: (Letter, Base),
}

const BI_GLUINGS: [Gluing; 1] = [Gluing {
    left: (Letter::L, Base::Top),
    right: (Letter::R, Base::Bot),
}];

const TRI_GLUINGS: [Gluing; 3] = [
    Gluing {
        left: (Letter::A, Base::L),
        right: (Letter::B, Base::T),
    },
    Gluing {
        left: (Letter::A, Base::R),
        right: (Letter::C, Base::T),
    },
    Gluing {
        left: (Letter::B, Base::R),
        right: (Letter::C, Base::L),
    },
];

impl Alphabet {
    pub fn arity(self) -> usize {
        match self {
            Alphabet::Bi => 2,
            Alphabet::Tri => 3,
        }
    }

    pub fn letters(self) -> &'static [Letter] {
        match self {
            Alphabet::Bi => &[Letter::L, Letter::R],
            Alphabet::Tri => &[Letter::A, Letter::B, Letter::C],
        }
    }

    /// Distinguished symbols in canonical order (`⊥, ⊤` / `T, L, R`).
    pub fn bases(self) -> &'static [Base] {
        match self {
            Alphabet::Bi => &[Base::Bot, Base::Top],
            Alphabet::Tri => &[Base::T, Base::L, Base::R],
        }
    }

    pub fn gluings(self) -> &'static [Gluing] {
        match self {
            Alphabet::Bi => &BI_GLUINGS,
            Alphabet::Tri => &TRI_GLUINGS,
        }
    }

    /// For distinct letters `m, n`, the vertices `(u, v)` with `m ⊗ u = n ⊗ v`.
    pub fn shared_vertex(self, m: Letter, n: Letter) -> Option<(Base, Base)> {
        self.gluings().iter().find_map(|g| {
            if g.left.0 == m && g.right.0 == n {
                Some((g.left.1, g.right.1))
            } else if g.right.0 == m && g.left.0 == n {
                Some((g.right.1, g.left.1))
            } else {
                None
            }
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Alphabet::Bi => "bi-pointed",
            Alphabet::Tri => "tri-pointed",
        }
    }
}

impl Letter {
    pub fn alphabet(self) -> Alphabet {
        match self {
            Letter::L | Letter::R => Alphabet::Bi,
            Letter::A | Letter::B | Letter::C => Alphabet::Tri,
        }
    }

    /// The distinguished point `D` with `self ⊗ D` chosen as `D` of `M ⊗ X`.
    /// `l → ⊥, r → ⊤, a → T, b → L, c → R`.
    pub fn closing_base(self) -> Base {
        match self {
            Letter::L => Base::Bot,
            Letter::R => Base::Top,
            Letter::A => Base::T,
            Letter::B => Base::L,
            Letter::C => Base::R,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Letter::L | Letter::A => 0,
            Letter::R | Letter::B => 1,
            Letter::C => 2,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Letter::L => 'l',
            Letter::R => 'r',
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
        }
    }

    pub fn from_symbol(c: char) -> Option<Letter> {
        Some(match c {
            'l' => Letter::L,
            'r' => Letter::R,
            'a' => Letter::A,
            'b' => Letter::B,
            'c' => Letter::C,
            _ => return None,
        })
    }
}

impl Base {
    pub fn alphabet(self) -> Alphabet {
        match self {
            Base::Bot | Base::Top => Alphabet::Bi,
            Base::T | Base::L | Base::R => Alphabet::Tri,
        }
    }

    /// Inverse of [`Letter::closing_base`]: the letter that extends this
    /// point one level down the initial chain.
    pub fn extension_letter(self) -> Letter {
        match self {
            Base::Bot => Letter::L,
            Base::Top => Letter::R,
            Base::T => Letter::A,
            Base::L => Letter::B,
            Base::R => Letter::C,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Base::Bot | Base::T => 0,
            Base::Top | Base::L => 1,
            Base::R => 2,
        }
    }

    /// Word-grammar symbol: `B`/`T` for `⊥`/`⊤`, `T`/`L`/`R` otherwise.
    pub fn symbol(self) -> char {
        match self {
            Base::Bot => 'B',
            Base::Top | Base::T => 'T',
            Base::L => 'L',
            Base::R => 'R',
        }
    }

    pub fn from_symbol(c: char, alphabet: Alphabet) -> Option<Base> {
        Some(match (alphabet, c) {
            (Alphabet::Bi, 'B') => Base::Bot,
            (Alphabet::Bi, 'T') => Base::Top,
            (Alphabet::Tri, 'T') => Base::T,
            (Alphabet::Tri, 'L') => Base::L,
            (Alphabet::Tri, 'R') => Base::R,
            _ => return None,
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
