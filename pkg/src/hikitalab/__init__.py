"""hikitalab: exact-arithmetic workbench for Hikita-type fixed-point rings,
bouquet quiver varieties, and the Gelfand-Graev Weyl-group action."""

__version__ = "0.1.0"
