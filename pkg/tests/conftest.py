import hypothesis

hypothesis.settings.register_profile("fast", max_examples=50, deadline=None)
hypothesis.settings.load_profile("fast")
