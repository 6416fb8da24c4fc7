use std::fmt;

use serde::{Deserialize, Serialize};

/// One of the three punctures, numbered 1, 2, 3 with arithmetic mod 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Hole(u8);

impl Hole {
    pub const ONE: Hole = Hole(0);
    pub const TWO: Hole = Hole(1);
    pub const THREE: Hole = Hole(2);
    pub const ALL: [Hole; 3] = [Hole::ONE, Hole::TWO, Hole::THREE];

    /// From a 1-based index.
    pub fn new(i: usize) -> Option<Hole> {
        (1..=3).contains(&i).then(|| Hole(i as u8 - 1))
    }

    /// From a 0-based array index.
    pub fn from_index(i: usize) -> Hole {
        Hole((i % 3) as u8)
    }

    /// 0-based array index.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// 1-based label.
    pub fn number(self) -> usize {
        self.0 as usize + 1
    }

    pub fn next(self) -> Hole {
        Hole((self.0 + 1) % 3)
    }

    pub fn prev(self) -> Hole {
        Hole((self.0 + 2) % 3)
    }

    /// `(i + 1, i + 2)`.
    pub fn others(self) -> (Hole, Hole) {
        (self.next(), self.prev())
    }
}

impl fmt::Display for Hole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl TryFrom<u8> for Hole {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        Hole::new(v as usize).ok_or_else(|| format!("hole index {v} not in 1..=3"))
    }
}

impl From<Hole> for u8 {
    fn from(h: Hole) -> u8 {
        h.0 + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_mod_three() {
        assert_eq!(Hole::ONE.next(), Hole::TWO);
        assert_eq!(Hole::THREE.next(), Hole::ONE);
        assert_eq!(Hole::ONE.prev(), Hole::THREE);
        assert_eq!(Hole::TWO.others(), (Hole::THREE, Hole::ONE));
        assert_eq!(Hole::new(0), None);
        assert_eq!(Hole::new(3), Some(Hole::THREE));
        assert_eq!(Hole::THREE.to_string(), "3");
    }
}
