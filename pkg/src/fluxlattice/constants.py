"""Physical constants (SI, CODATA 2018 exact values) and unit helpers.

Energies are carried as frequencies in GHz (h = 1), times in ns, flux in
units of the flux quantum.
"""

import numpy as np

h = 6.62607015e-34  # J s
e = 1.602176634e-19  # C
Phi0 = 2.067833848e-15  # Wb
k_B = 1.380649e-23  # J/K

FF = 1e-15
NH = 1e-9
GHZ = 1e9

#: 4 e^2 / h expressed in GHz * fF; multiply by an inverse capacitance in 1/fF.
FOUR_E2_OVER_H = 4 * e**2 / h / (GHZ * FF)


def charging_energy(C_fF):
    """E_C = e^2 / (2 C h) in GHz."""
    return e**2 / (2 * C_fF * FF * h) / GHZ


def inductive_energy(L_nH):
    """E_L = (Phi0 / 2 pi)^2 / (L h) in GHz."""
    return (Phi0 / (2 * np.pi)) ** 2 / (L_nH * NH * h) / GHZ
