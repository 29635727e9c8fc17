"""Core numerics: models, geometry, Kelvin transform, solvers and checks"""
