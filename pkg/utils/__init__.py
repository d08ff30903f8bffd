"""Logging, JSON and report rendering helpers"""
