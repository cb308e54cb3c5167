"""
测试公共配置

精确有理数运算单例较慢，hypothesis 默认 200ms 期限不适用。
"""

from hypothesis import settings

settings.register_profile("lvalue", max_examples=10, deadline=None)
settings.load_profile("lvalue")
