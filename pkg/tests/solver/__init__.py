"""Tests for the grid and radial solvers"""
