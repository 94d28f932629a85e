import sympy

#: the symbol for the state value when defining coefficients symbolically. This one is different from the one you can import from spdeint directly by being defined via SymPy and thus being better suited for some symbolic processing techniques that are not available in SymEngine yet.
y = sympy.Symbol("y", real=True)

#: the symbol for the spatial coordinate when defining coefficients symbolically. This one is different from the one you can import from spdeint directly by being defined via SymPy and thus being better suited for some symbolic processing techniques that are not available in SymEngine yet.
x = sympy.Symbol("x", real=True)
