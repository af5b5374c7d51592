from hypothesis import settings

# 級数の反復は 1 例あたり数百ミリ秒かかることがある
settings.register_profile("wildram", deadline=None, max_examples=50)
settings.load_profile("wildram")
