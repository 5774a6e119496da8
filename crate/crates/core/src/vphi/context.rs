use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{injectivize, GroupBackend, GroupElement, Injectivity, Injectivized, WreathRecursion};

/// The pair `(G, φ)` that elements live over.
///
/// Non-injective recursions on finite groups are replaced by their
/// injectivization; labels given in `G` are projected to `Ĝ` on entry, so
/// equality of elements is equality in `V_φ̂(Ĝ)`.
#[derive(Clone)]
pub struct Context(Arc<Inner>);

struct Inner {
    declared: WreathRecursion,
    quotient: Option<Injectivized>,
}

impl Context {
    pub fn new(phi: WreathRecursion) -> Result<Self> {
        let quotient = match phi.is_injective() {
            Injectivity::Injective => None,
            _ => Some(injectivize(&phi)?),
        };
        Ok(Context(Arc::new(Inner { declared: phi, quotient })))
    }

    /// Thompson's group V itself: trivial labels.
    pub fn trivial() -> Self {
        Self::new(WreathRecursion::diagonal(GroupBackend::trivial())).expect("trivial context")
    }

    pub fn diagonal(g: GroupBackend) -> Self {
        Self::new(WreathRecursion::diagonal(g)).expect("diagonal is injective")
    }

    /// The recursion as given by the user.
    pub fn declared(&self) -> &WreathRecursion {
        &self.0.declared
    }

    /// The injective recursion used for all computations.
    pub fn recursion(&self) -> &WreathRecursion {
        match &self.0.quotient {
            Some(q) => q.recursion(),
            None => &self.0.declared,
        }
    }

    /// Backend of the labels stored in elements.
    pub fn backend(&self) -> &GroupBackend {
        self.recursion().backend()
    }

    /// Backend of user-facing labels.
    pub fn source_backend(&self) -> &GroupBackend {
        self.0.declared.backend()
    }

    pub fn injectivized(&self) -> Option<&Injectivized> {
        self.0.quotient.as_ref()
    }

    pub fn is_diagonal(&self) -> bool {
        self.0.declared.is_diagonal()
    }

    /// Maps a label of `G` to the stored label.
    pub fn project(&self, g: &GroupElement) -> Result<GroupElement> {
        match &self.0.quotient {
            Some(q) => q.project(g),
            None => {
                self.backend().check(g)?;
                Ok(g.clone())
            }
        }
    }

    /// Parses a label token of `G` and projects it.
    pub fn parse_label(&self, token: &str) -> Result<GroupElement> {
        self.project(&self.source_backend().parse_label(token)?)
    }

    /// Formats a stored label as a token of `G` that parses back to it.
    pub fn format_label(&self, g: &GroupElement) -> String {
        match &self.0.quotient {
            Some(q) => match q.lift(g) {
                Ok(x) => self.source_backend().format_label(&x),
                Err(_) => self.backend().format_label(g),
            },
            None => self.backend().format_label(g),
        }
    }

    pub fn check_same(&self, other: &Context) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub(crate) fn require_diagonal(&self, what: &str) -> Result<()> {
        if self.is_diagonal() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("{what} defined only for the diagonal recursion")))
        }
    }
}

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.declared == other.0.declared
    }
}

impl Eq for Context {}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Context({})", self.0.declared)
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.declared)
    }
}
