"""
Espectro de impurezas δ de Dirac em 1+1 dimensões
"""

__version__ = "1.0.0"
__author__ = "Dirac Delta Spectra Team"
__description__ = "Espalhamento, estados ligados e densidades de carga de elétrons e pósitrons em potenciais δ"
