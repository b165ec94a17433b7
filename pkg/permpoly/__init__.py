__version__ = "0.1.0"

if __name__ == "__main__":
    # So release scripts can get the version without having to parse python
    print(__version__)
