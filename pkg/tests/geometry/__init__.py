"""Tests for caps, reflections, inversions and domain presets"""
