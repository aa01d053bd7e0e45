"""Flux-qubit arrays with a tunable coupler: single-qubit spectra, coupled
array Hamiltonians, Schrieffer-Wolff reduction to two qubits and the
measurement-analysis fits used to characterise them."""

__version__ = "0.1.0"
