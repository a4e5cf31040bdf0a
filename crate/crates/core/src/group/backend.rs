use std::any::Any;
use std::fmt;

use crate::descriptor::Descriptor;
use crate::error::Result;
use crate::group::Element;

/// Multiplication rule for one family of element encodings.
///
/// Every backend fixes an encoding width and a canonical form, so that
/// encoding equality coincides with element equality.
pub trait Backend: Send + Sync + fmt::Debug + Any {
    /// Short name written into group files (`metacyclic`, `monomial`, ...).
    fn kind(&self) -> &'static str;

    fn width(&self) -> usize;

    fn identity(&self) -> Element;

    fn multiply_into(&self, a: &[u32], b: &[u32], out: &mut Vec<u32>);

    fn inverse(&self, a: &[u32]) -> Element;

    /// Normal-form text for an element.
    fn format(&self, a: &[u32]) -> String;

    /// Inverse of [`Backend::format`]; also accepts any word over the
    /// backend's generator names.
    fn parse(&self, s: &str) -> Result<Element>;

    /// Recipe that rebuilds an identical backend, if one exists.
    fn descriptor(&self) -> Option<Descriptor> {
        None
    }

    fn as_any(&self) -> &dyn Any;

    fn multiply(&self, a: &[u32], b: &[u32]) -> Element {
        let mut out = Vec::with_capacity(self.width());
        self.multiply_into(a, b, &mut out);
        Element::new(out)
    }
}
