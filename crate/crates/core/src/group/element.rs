use std::borrow::Borrow;
use std::fmt;

/// Opaque group element: a backend-specific canonical word vector.
///
/// Two elements of the same backend are equal exactly when their encodings
/// are equal, so encodings double as hash keys.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Box<[u32]>);

impl Element {
    pub fn new(words: Vec<u32>) -> Self {
        Element(words.into_boxed_slice())
    }

    pub fn from_slice(words: &[u32]) -> Self {
        Element(words.into())
    }

    pub fn words(&self) -> &[u32] {
        &self.0
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    /// Canonical little-endian byte encoding.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|w| w.to_le_bytes()).collect()
    }
}

impl Borrow<[u32]> for Element {
    fn borrow(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element{:?}", &self.0)
    }
}
