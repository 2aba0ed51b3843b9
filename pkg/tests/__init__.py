# testing
