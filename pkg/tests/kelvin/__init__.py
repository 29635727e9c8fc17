"""Tests for Kelvin frames and the Kelvin transform"""
