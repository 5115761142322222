"""PyHolevo is a Python library for the Holevo Cramer-Rao bound of Gaussian probes.

It computes the bound for joint estimation of displacement parameters by
semidefinite programming, extracts the optimal Gaussian measurement and
checks everything against the closed-form two-mode squeezed thermal solution.

Basic usage:

   >>> from pyholevo.gaussian.probe_model import symmetric_tmst_probe
   >>> from pyholevo.gaussian.euclidean_frame import orthonormal_frame
   >>> from pyholevo.sdp.holevo_bound import holevo_bound
   >>> result = holevo_bound(orthonormal_frame(symmetric_tmst_probe(0.75, 0.5)))
   >>> round(result.sigma_star, 6)
   1.103638

"""
import logging
from logging import NullHandler

logging.getLogger(__name__).addHandler(NullHandler())
