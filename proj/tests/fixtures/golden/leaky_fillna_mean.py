import pandas as pd
from sklearn.model_selection import train_test_split
from sklearn.ensemble import RandomForestClassifier

df = pd.read_csv("patients.csv")
age_mean = df["age"].mean()
df = df.fillna(age_mean)
y = df["outcome"]
X = df.drop("outcome", axis=1)
X_train, X_test, y_train, y_test = train_test_split(X, y)
rf = RandomForestClassifier()
rf.fit(X_train, y_train)
rf.predict(X_test)
