use core::fmt;

/// Status of a bag argument relative to a partial solution `S`.
///
/// The discriminants are chosen so that combining two colorings at a join is
/// a bitwise or: `out | att = att`, `att | def = def`, `in | in = in`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Color {
    /// No attack between the argument and `S` in either direction.
    Out = 0b00,
    /// Attacks `S` and is not (yet) attacked by `S`.
    Att = 0b01,
    /// Member of `S`.
    In = 0b10,
    /// Attacked by `S`.
    Def = 0b11,
}

impl Color {
    fn from_bits(bits: u64) -> Self {
        match bits & 0b11 {
            0b00 => Color::Out,
            0b01 => Color::Att,
            0b10 => Color::In,
            _ => Color::Def,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Color::Out => "out",
            Color::Att => "att",
            Color::In => "in",
            Color::Def => "def",
        }
    }
}

/// Largest bag a [`Coloring`] can describe.
pub const MAX_BAG: usize = 32;

pub(crate) const LOW_BITS: u64 = 0x5555_5555_5555_5555;

fn below(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Packed assignment of a [`Color`] to each position of a sorted bag, two
/// bits per position.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring(u64);

impl Coloring {
    pub const EMPTY: Coloring = Coloring(0);

    pub fn get(self, pos: usize) -> Color {
        Color::from_bits(self.0 >> (2 * pos))
    }

    pub fn set(self, pos: usize, color: Color) -> Self {
        let shift = 2 * pos as u32;
        Coloring((self.0 & !(0b11 << shift)) | ((color as u64) << shift))
    }

    /// Opens a new position at `pos`, shifting later positions up.
    pub fn insert(self, pos: usize, color: Color) -> Self {
        let shift = 2 * pos as u32;
        let low = self.0 & below(shift);
        let high = self.0.checked_shr(shift).unwrap_or(0);
        Coloring(low | ((color as u64) << shift) | high.checked_shl(shift + 2).unwrap_or(0))
    }

    /// Drops position `pos`, shifting later positions down.
    pub fn remove(self, pos: usize) -> Self {
        let shift = 2 * pos as u32;
        let low = self.0 & below(shift);
        let high = self.0.checked_shr(shift + 2).unwrap_or(0);
        Coloring(low | high.checked_shl(shift).unwrap_or(0))
    }

    /// One bit per `in` position, at the low bit of each two-bit slot.
    pub fn in_mask(self) -> u64 {
        (self.0 >> 1) & !self.0 & LOW_BITS
    }

    pub fn join(self, other: Coloring) -> Self {
        Coloring(self.0 | other.0)
    }

    pub(crate) fn or_bits(self, bits: u64) -> Self {
        Coloring(self.0 | bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coloring({:#x})", self.0)
    }
}
