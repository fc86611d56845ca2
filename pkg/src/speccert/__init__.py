"""speccert: build, certify and survey graphs whose nonzero eigenvalues
other than the index share a single absolute value."""

__version__ = "0.1.0"
