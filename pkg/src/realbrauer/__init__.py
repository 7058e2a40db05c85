"""Exact computations for Real graded Brauer groups of finite Real groupoids."""
