import pandas as pd
from sklearn.naive_bayes import BernoulliNB

train = pd.read_csv("train.csv")
test = pd.read_csv("test.csv")
y_train = train["spam"]
X_train = train.drop("spam", axis=1)
y_test = test["spam"]
X_test = test.drop("spam", axis=1)
nb = BernoulliNB()
nb.fit(X_train, y_train)
nb.score(X_test, y_test)
