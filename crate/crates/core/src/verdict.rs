/// Result of a decision procedure: either the property holds, or it fails
/// with a certificate explaining why.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<C> {
    Holds,
    Fails(C),
}

impl<C> Verdict<C> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn certificate(&self) -> Option<&C> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(c) => Some(c),
        }
    }

    pub fn into_certificate(self) -> Option<C> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(c) => Some(c),
        }
    }

    pub fn map<D>(self, f: impl FnOnce(C) -> D) -> Verdict<D> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(c) => Verdict::Fails(f(c)),
        }
    }
}

impl<C> From<Option<C>> for Verdict<C> {
    fn from(certificate: Option<C>) -> Self {
        certificate.map_or(Verdict::Holds, Verdict::Fails)
    }
}
