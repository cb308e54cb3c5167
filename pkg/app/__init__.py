# lvalue-verify：eta/theta 恒等式与 L(E_N, 2) 闭式验证引擎
