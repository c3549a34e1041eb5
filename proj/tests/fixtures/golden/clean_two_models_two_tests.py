import pandas as pd
from sklearn.linear_model import LogisticRegression
from sklearn.tree import DecisionTreeClassifier

a = pd.read_csv("site_a.csv")
b = pd.read_csv("site_b.csv")
m1 = LogisticRegression()
m1.fit(a.drop("y", axis=1), a["y"])
m1.score(b.drop("y", axis=1), b["y"])
c = pd.read_csv("site_c.csv")
m2 = DecisionTreeClassifier()
m2.fit(a.drop("y", axis=1), a["y"])
m2.score(c.drop("y", axis=1), c["y"])
