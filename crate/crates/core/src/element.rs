use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// An opaque group element: a canonical fixed-length byte encoding.
///
/// Equality, ordering and hashing are all on the raw bytes, so two elements
/// are equal exactly when their encodings coincide. Which bytes are valid is
/// decided by the backend that produced the element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupElement(SmallVec<[u8; 32]>);

impl GroupElement {
    pub fn from_bytes(bytes: &[u8]) -> Self {
        GroupElement(SmallVec::from_slice(bytes))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        hex::decode(s).ok().map(|b| GroupElement::from_bytes(&b))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({})", self.to_hex())
    }
}

impl FromIterator<u8> for GroupElement {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        GroupElement(iter.into_iter().collect())
    }
}
