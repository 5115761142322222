"""
This module defines probe model validation errors.
"""
COVARIANCE_NOT_SQUARE = 'Covariance must be a square matrix of even dimension.'
COVARIANCE_NOT_SYMMETRIC = 'Covariance must be symmetric.'
COVARIANCE_NOT_FINITE = 'Covariance entries must be finite numbers.'
COVARIANCE_NOT_QUANTUM = 'Covariance violates the uncertainty principle: smallest eigenvalue of A + (i/2)Omega is {:.3e}.'
COEFFS_SHAPE = 'Mean coefficients must be an l x 2n matrix with 2n = {} columns.'
COEFFS_NOT_FINITE = 'Mean coefficients must be finite numbers.'
COEFFS_RANK = 'Mean coefficients must have full row rank: parameters are not independently imprinted.'
VARIANCE_BELOW_VACUUM = 'Thermal variance v must be at least 1/2.'
NEGATIVE_SQUEEZING = 'Squeezing r must be non-negative.'
BASIS_SHAPE = 'Basis must be a 2n x 2n matrix with 2n = {}.'
BASIS_NOT_ORTHONORMAL = 'Basis is not orthonormal for the covariance: max deviation of E^T A E from identity is {:.3e}.'
UNKNOWN_BASIS = 'Unknown basis "{}": expected "cholesky", "eigen" or a matrix.'
VECTOR_LENGTH = 'Coordinate vectors must have the same even length.'
ORDERING = 'Only the "yx-interleaved" coordinate ordering is supported.'
